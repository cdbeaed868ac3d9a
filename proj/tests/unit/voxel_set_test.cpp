#include <gtest/gtest.h>

#include "bblab/errors.hpp"
#include "bblab/voxel_set.hpp"

using namespace bblab;

TEST(VoxelSet, SortsAndDeduplicates) {
  const VoxelSet v(2, {0.0, 0.0}, 0.5, {Cell{1, 0}, Cell{0, 1}, Cell{1, 0}});
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(v.cells()[0], (Cell{0, 1}));
  EXPECT_DOUBLE_EQ(v.measure(), 0.5);
  EXPECT_TRUE(v.contains(Cell{1, 0}));
  EXPECT_FALSE(v.contains(Cell{1, 1}));
  EXPECT_DOUBLE_EQ(v.center(Cell{1, 0}, 0), 0.75);
}

TEST(VoxelSet, Validation) {
  EXPECT_THROW(VoxelSet(0, {}, 1.0, {}), DomainError);
  EXPECT_THROW(VoxelSet(5, std::vector<double>(5), 1.0, {}), DomainError);
  EXPECT_THROW(VoxelSet(1, {0.0}, -1.0, {}), DomainError);
  EXPECT_THROW(VoxelSet(1, {0.0, 0.0}, 1.0, {}), DomainError);
  // Coordinates beyond the dimension must be zero.
  EXPECT_THROW(VoxelSet(1, {0.0}, 1.0, {Cell{0, 1}}), DomainError);
}

TEST(VoxelSet, BoundsAndScaling) {
  const VoxelSet v(2, {1.0, 2.0}, 0.5, {Cell{-1, 3}, Cell{2, 0}});
  Cell lo, hi;
  v.bounds(lo, hi);
  EXPECT_EQ(lo[0], -1);
  EXPECT_EQ(hi[1], 3);
  const auto s = v.scaled(2.0);
  EXPECT_DOUBLE_EQ(s.spacing(), 1.0);
  EXPECT_DOUBLE_EQ(s.origin()[1], 4.0);
  EXPECT_DOUBLE_EQ(s.measure(), 4 * v.measure());
}

TEST(VoxelSet, SymmetricDifferenceAcrossOrigins) {
  const VoxelSet a(1, {0.0}, 0.5, {Cell{0}, Cell{1}, Cell{2}});
  const VoxelSet b(1, {0.5}, 0.5, {Cell{0}, Cell{1}, Cell{2}});  // cells 1..3 in a's frame
  EXPECT_DOUBLE_EQ(symmetric_difference_measure(a, b), 1.0);
  EXPECT_EQ(count_not_contained(a, b), 1u);
  const VoxelSet c(1, {0.25}, 0.5, {Cell{0}});
  EXPECT_THROW(symmetric_difference_measure(a, c), AlignmentError);
}
