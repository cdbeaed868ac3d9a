#include "bblab/voxel_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bblab/errors.hpp"
#include "bblab/grid_function.hpp"

namespace bblab {

namespace {

void validate_header(std::size_t dim, const std::vector<double>& origin, double spacing) {
  if (dim == 0 || dim > kMaxDim) throw DomainError("voxel set dimension must be between 1 and 4");
  if (origin.size() != dim) throw DomainError("voxel origin length must equal dimension");
  if (!(spacing > 0) || !std::isfinite(spacing)) throw DomainError("voxel spacing must be positive");
  for (double o : origin) {
    if (!std::isfinite(o)) throw DomainError("voxel origin must be finite");
  }
}

// Offset (in cells) that maps b's indices into a's frame.
std::vector<std::int64_t> frame_offset(const VoxelSet& a, const VoxelSet& b) {
  if (a.dim() != b.dim()) throw AlignmentError("voxel sets differ in dimension");
  if (std::abs(a.spacing() - b.spacing()) > 1e-12 * std::max(a.spacing(), b.spacing())) {
    throw AlignmentError("voxel sets differ in spacing");
  }
  return lattice_offset(a.origin(), b.origin(), a.spacing());
}

Cell translate(Cell c, const std::vector<std::int64_t>& offset) {
  for (std::size_t k = 0; k < offset.size(); ++k) c[k] += offset[k];
  return c;
}

}  // namespace

VoxelSet::VoxelSet(std::size_t dim, std::vector<double> origin, double spacing, std::vector<Cell> cells)
    : dim_(dim), origin_(std::move(origin)), spacing_(spacing), cells_(std::move(cells)) {
  validate_header(dim_, origin_, spacing_);
  for (const Cell& c : cells_) {
    for (std::size_t k = dim_; k < kMaxDim; ++k) {
      if (c[k] != 0) throw DomainError("cell coordinates beyond the set dimension must be zero");
    }
  }
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

VoxelSet VoxelSet::from_sorted(std::size_t dim,
                               std::vector<double> origin,
                               double spacing,
                               std::vector<Cell> cells) {
  validate_header(dim, origin, spacing);
  VoxelSet out;
  out.dim_ = dim;
  out.origin_ = std::move(origin);
  out.spacing_ = spacing;
  out.cells_ = std::move(cells);
  return out;
}

double VoxelSet::cell_volume() const { return std::pow(spacing_, static_cast<double>(dim_)); }

double VoxelSet::measure() const { return cell_volume() * static_cast<double>(cells_.size()); }

bool VoxelSet::contains(const Cell& c) const {
  return std::binary_search(cells_.begin(), cells_.end(), c);
}

void VoxelSet::bounds(Cell& lo, Cell& hi) const {
  if (cells_.empty()) throw DomainError("bounds of an empty voxel set");
  lo = cells_.front();
  hi = cells_.front();
  for (const Cell& c : cells_) {
    for (std::size_t k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], c[k]);
      hi[k] = std::max(hi[k], c[k]);
    }
  }
}

VoxelSet VoxelSet::scaled(double factor) const {
  if (!(factor > 0)) throw DomainError("scale factor must be positive");
  std::vector<double> origin(origin_);
  for (double& o : origin) o *= factor;
  return from_sorted(dim_, std::move(origin), spacing_ * factor, cells_);
}

double symmetric_difference_measure(const VoxelSet& a, const VoxelSet& b) {
  const auto offset = frame_offset(a, b);
  std::vector<Cell> mapped;
  mapped.reserve(b.size());
  for (const Cell& c : b.cells()) mapped.push_back(translate(c, offset));
  std::size_t common = 0;
  auto ia = a.cells().begin();
  auto ib = mapped.begin();
  while (ia != a.cells().end() && ib != mapped.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t diff = a.size() + b.size() - 2 * common;
  return a.cell_volume() * static_cast<double>(diff);
}

std::size_t count_not_contained(const VoxelSet& inner, const VoxelSet& outer) {
  const auto offset = frame_offset(outer, inner);
  std::size_t missing = 0;
  for (const Cell& c : inner.cells()) {
    if (!outer.contains(translate(c, offset))) ++missing;
  }
  return missing;
}

}  // namespace bblab
