#include "bblab/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bblab/errors.hpp"
#include "bblab/summation.hpp"

namespace bblab {

namespace {

constexpr double kLatticeTolerance = 1e-9;  // in cells

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t a = shape.size(); a-- > 1;) strides[a - 1] = strides[a] * shape[a];
  return strides;
}

bool same_spacing(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

// Calls fn(flat, idx) for every cell in row-major order.
template <typename Fn>
void for_each_cell(const std::vector<std::size_t>& shape, Fn&& fn) {
  std::size_t total = 1;
  for (auto n : shape) total *= n;
  std::vector<std::int64_t> idx(shape.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, std::span<const std::int64_t>(idx));
    for (std::size_t a = shape.size(); a-- > 0;) {
      if (++idx[a] < static_cast<std::int64_t>(shape[a])) break;
      idx[a] = 0;
    }
  }
}

}  // namespace

GridFunction::GridFunction(std::vector<double> origin,
                           double spacing,
                           std::vector<std::size_t> shape,
                           std::vector<double> values,
                           double zero_threshold)
    : origin_(std::move(origin)),
      spacing_(spacing),
      shape_(std::move(shape)),
      values_(std::move(values)),
      zero_threshold_(zero_threshold) {
  if (shape_.empty() || shape_.size() > kMaxDim) {
    throw DomainError("grid dimension must be between 1 and 4");
  }
  if (origin_.size() != shape_.size()) throw DomainError("origin length must equal dimension");
  if (!(spacing_ > 0) || !std::isfinite(spacing_)) throw DomainError("grid spacing must be positive");
  if (!(zero_threshold_ >= 0) || !std::isfinite(zero_threshold_)) {
    throw DomainError("zero threshold must be finite and nonnegative");
  }
  std::size_t total = 1;
  for (auto n : shape_) {
    if (n == 0) throw DomainError("grid shape entries must be positive");
    total *= n;
  }
  if (values_.size() != total) {
    throw DomainError("grid holds " + std::to_string(values_.size()) + " values, shape needs " +
                      std::to_string(total));
  }
  for (double o : origin_) {
    if (!std::isfinite(o)) throw DomainError("grid origin must be finite");
  }
  for (double v : values_) {
    if (!(v >= 0) || !std::isfinite(v)) throw DomainError("grid values must be finite and nonnegative");
  }
}

double GridFunction::cell_volume() const {
  return std::pow(spacing_, static_cast<double>(dim()));
}

double GridFunction::max_value() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

bool GridFunction::is_zero() const {
  return std::none_of(values_.begin(), values_.end(),
                      [this](double v) { return v > zero_threshold_; });
}

std::size_t GridFunction::flat_index(std::span<const std::int64_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    flat = flat * shape_[a] + static_cast<std::size_t>(idx[a]);
  }
  return flat;
}

void GridFunction::unravel(std::size_t flat, std::span<std::int64_t> idx) const {
  for (std::size_t a = shape_.size(); a-- > 0;) {
    idx[a] = static_cast<std::int64_t>(flat % shape_[a]);
    flat /= shape_[a];
  }
}

double GridFunction::at(std::span<const std::int64_t> idx) const {
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (idx[a] < 0 || idx[a] >= static_cast<std::int64_t>(shape_[a])) return 0.0;
  }
  return values_[flat_index(idx)];
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
  return GridFunction(origin_, spacing_, shape_, std::move(values), zero_threshold_);
}

double integrate(const GridFunction& f) { return f.cell_volume() * pairwise_sum(f.values()); }

GridFunction homothety(const GridFunction& f, double mu, std::span<const double> shift, double s) {
  if (!(mu > 0) || !std::isfinite(mu)) throw DomainError("homothety factor must be positive");
  if (shift.size() != f.dim()) throw DomainError("homothety shift must have the grid dimension");
  std::vector<double> origin(f.dim());
  for (std::size_t a = 0; a < f.dim(); ++a) origin[a] = mu * f.origin()[a] + shift[a];
  const double scale = std::pow(mu, s);
  std::vector<double> values(f.values().begin(), f.values().end());
  for (double& v : values) v *= scale;
  return GridFunction(std::move(origin), mu * f.spacing(), f.shape(), std::move(values),
                      f.zero_threshold());
}

GridFunction product_lift(const GridFunction& f, int q, std::size_t max_dim) {
  if (q < 1) throw DomainError("product lift order must be a positive integer");
  const std::size_t out_dim = f.dim() * static_cast<std::size_t>(q);
  if (out_dim > max_dim || out_dim > kMaxDim) {
    throw CapacityError("product lift dimension " + std::to_string(out_dim) +
                        " exceeds the limit " + std::to_string(std::min(max_dim, kMaxDim)));
  }
  std::vector<double> origin;
  std::vector<std::size_t> shape;
  for (int j = 0; j < q; ++j) {
    origin.insert(origin.end(), f.origin().begin(), f.origin().end());
    shape.insert(shape.end(), f.shape().begin(), f.shape().end());
  }
  std::vector<double> values(f.values().begin(), f.values().end());
  for (int j = 1; j < q; ++j) {
    std::vector<double> next;
    next.reserve(values.size() * f.size());
    for (double left : values) {
      for (double right : f.values()) next.push_back(left * right);
    }
    values = std::move(next);
  }
  return GridFunction(std::move(origin), f.spacing(), std::move(shape), std::move(values),
                      f.zero_threshold());
}

VoxelSet support_cells(const GridFunction& f) {
  std::vector<Cell> cells;
  for_each_cell(f.shape(), [&](std::size_t flat, std::span<const std::int64_t> idx) {
    if (!f.in_support(flat)) return;
    Cell c{};
    std::copy(idx.begin(), idx.end(), c.begin());
    cells.push_back(c);
  });
  return VoxelSet::from_sorted(f.dim(), f.origin(), f.spacing(), std::move(cells));
}

bool lattice_compatible(const GridFunction& a, const GridFunction& b) {
  if (a.dim() != b.dim() || !same_spacing(a.spacing(), b.spacing())) return false;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double cells = (b.origin()[k] - a.origin()[k]) / a.spacing();
    if (std::abs(cells - std::round(cells)) > kLatticeTolerance) return false;
  }
  return true;
}

std::vector<std::int64_t> lattice_offset(std::span<const double> base_origin,
                                         std::span<const double> other_origin,
                                         double spacing) {
  if (base_origin.size() != other_origin.size()) throw AlignmentError("dimension mismatch");
  std::vector<std::int64_t> out(base_origin.size());
  for (std::size_t k = 0; k < base_origin.size(); ++k) {
    const double cells = (other_origin[k] - base_origin[k]) / spacing;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > kLatticeTolerance) {
      throw AlignmentError("origins are not separated by whole cells");
    }
    out[k] = static_cast<std::int64_t>(rounded);
  }
  return out;
}

GridFunction embed(const GridFunction& f, std::vector<double> origin, std::vector<std::size_t> shape) {
  if (origin.size() != f.dim() || shape.size() != f.dim()) {
    throw DomainError("embedding box must have the grid dimension");
  }
  const auto offset = lattice_offset(origin, f.origin(), f.spacing());
  std::size_t total = 1;
  for (auto n : shape) total *= n;
  std::vector<double> values(total, 0.0);
  const auto strides = strides_of(shape);
  for_each_cell(f.shape(), [&](std::size_t flat, std::span<const std::int64_t> idx) {
    const double v = f.values()[flat];
    if (v == 0.0) return;
    std::size_t out = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const std::int64_t t = idx[a] + offset[a];
      if (t < 0 || t >= static_cast<std::int64_t>(shape[a])) return;
      out += static_cast<std::size_t>(t) * strides[a];
    }
    values[out] = v;
  });
  return GridFunction(std::move(origin), f.spacing(), std::move(shape), std::move(values),
                      f.zero_threshold());
}

std::pair<GridFunction, GridFunction> on_common_grid(const GridFunction& a, const GridFunction& b) {
  if (!lattice_compatible(a, b)) throw AlignmentError("grids do not share a lattice");
  const auto offset = lattice_offset(a.origin(), b.origin(), a.spacing());
  std::vector<double> origin(a.dim());
  std::vector<std::size_t> shape(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const std::int64_t lo = std::min<std::int64_t>(0, offset[k]);
    const std::int64_t hi = std::max<std::int64_t>(static_cast<std::int64_t>(a.shape()[k]),
                                                   offset[k] + static_cast<std::int64_t>(b.shape()[k]));
    origin[k] = a.origin()[k] + static_cast<double>(lo) * a.spacing();
    shape[k] = static_cast<std::size_t>(hi - lo);
  }
  return {embed(a, origin, shape), embed(b, origin, shape)};
}

GridFunction pointwise_max(const GridFunction& a, const GridFunction& b) {
  auto [ea, eb] = on_common_grid(a, b);
  std::vector<double> values(ea.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::max(ea.values()[i], eb.values()[i]);
  return ea.with_values(std::move(values));
}

GridFunction shift_cells(const GridFunction& f, std::span<const std::int64_t> shift) {
  if (shift.size() != f.dim()) throw DomainError("shift must have the grid dimension");
  std::vector<double> origin(f.origin());
  for (std::size_t a = 0; a < f.dim(); ++a) origin[a] += static_cast<double>(shift[a]) * f.spacing();
  return GridFunction(std::move(origin), f.spacing(), f.shape(),
                      std::vector<double>(f.values().begin(), f.values().end()), f.zero_threshold());
}

GridFunction resample(const GridFunction& f, std::span<const double> anchor, double spacing) {
  if (anchor.size() != f.dim()) throw DomainError("resampling anchor must have the grid dimension");
  if (!(spacing > 0)) throw DomainError("resampling spacing must be positive");
  std::vector<double> origin(f.dim());
  std::vector<std::size_t> shape(f.dim());
  for (std::size_t a = 0; a < f.dim(); ++a) {
    const double lo = f.origin()[a];
    const double hi = lo + static_cast<double>(f.shape()[a]) * f.spacing();
    const double k_lo = std::floor((lo - anchor[a]) / spacing + kLatticeTolerance);
    const double k_hi = std::ceil((hi - anchor[a]) / spacing - kLatticeTolerance);
    origin[a] = anchor[a] + k_lo * spacing;
    shape[a] = static_cast<std::size_t>(std::max(1.0, k_hi - k_lo));
  }
  std::vector<std::int64_t> src(f.dim());
  return GridFunction::sample(origin, spacing, shape, [&](std::span<const double> x) {
    for (std::size_t a = 0; a < f.dim(); ++a) {
      src[a] = static_cast<std::int64_t>(std::floor((x[a] - f.origin()[a]) / f.spacing()));
    }
    return f.at(src);
  }, f.zero_threshold());
}

GridFunction crop_to_support(const GridFunction& f) {
  std::vector<std::int64_t> lo(f.dim(), INT64_MAX);
  std::vector<std::int64_t> hi(f.dim(), INT64_MIN);
  bool any = false;
  for_each_cell(f.shape(), [&](std::size_t flat, std::span<const std::int64_t> idx) {
    if (!f.in_support(flat)) return;
    any = true;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      lo[a] = std::min(lo[a], idx[a]);
      hi[a] = std::max(hi[a], idx[a]);
    }
  });
  if (!any) {
    return GridFunction(f.origin(), f.spacing(), std::vector<std::size_t>(f.dim(), 1),
                        {0.0}, f.zero_threshold());
  }
  std::vector<double> origin(f.dim());
  std::vector<std::size_t> shape(f.dim());
  for (std::size_t a = 0; a < f.dim(); ++a) {
    origin[a] = f.origin()[a] + static_cast<double>(lo[a]) * f.spacing();
    shape[a] = static_cast<std::size_t>(hi[a] - lo[a] + 1);
  }
  return embed(f, std::move(origin), std::move(shape));
}

std::vector<double> centroid(const GridFunction& f) {
  std::vector<std::vector<double>> weighted(f.dim(), std::vector<double>(f.size(), 0.0));
  for_each_cell(f.shape(), [&](std::size_t flat, std::span<const std::int64_t> idx) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      weighted[a][flat] = f.values()[flat] * f.center(a, idx[a]);
    }
  });
  const double mass = pairwise_sum(f.values());
  if (!(mass > 0)) throw DomainError("centroid of a zero function");
  std::vector<double> out(f.dim());
  for (std::size_t a = 0; a < f.dim(); ++a) out[a] = pairwise_sum(weighted[a]) / mass;
  return out;
}

double total_variation(const GridFunction& f) {
  const double face = std::pow(f.spacing(), static_cast<double>(f.dim()) - 1.0);
  std::vector<double> jumps;
  jumps.reserve(f.size() * f.dim() * 2);
  std::vector<std::int64_t> nb(f.dim());
  for_each_cell(f.shape(), [&](std::size_t flat, std::span<const std::int64_t> idx) {
    const double v = f.values()[flat];
    for (std::size_t a = 0; a < idx.size(); ++a) {
      std::copy(idx.begin(), idx.end(), nb.begin());
      nb[a] += 1;
      jumps.push_back(std::abs(f.at(nb) - v));
      if (idx[a] == 0) jumps.push_back(v);
    }
  });
  return face * pairwise_sum(jumps);
}

}  // namespace bblab
