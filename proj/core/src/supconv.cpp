#include "bblab/supconv.hpp"

#include <algorithm>
#include <cmath>

#include "bblab/errors.hpp"
#include "bblab/means.hpp"
#include "bblab/parallel.hpp"
#include "refined_lattice.hpp"

namespace bblab {

namespace {

struct SupportTable {
  std::vector<std::size_t> offset;  // flat offset contribution on the output grid
  std::vector<double> root;         // value^(1/s)
};

SupportTable support_table(const GridFunction& f,
                           std::int64_t coeff,
                           const std::vector<std::size_t>& out_strides,
                           double inv_s) {
  SupportTable t;
  std::vector<std::int64_t> idx(f.dim());
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    if (!f.in_support(flat)) continue;
    f.unravel(flat, idx);
    std::size_t off = 0;
    for (std::size_t a = 0; a < f.dim(); ++a) {
      off += static_cast<std::size_t>(coeff * idx[a]) * out_strides[a];
    }
    t.offset.push_back(off);
    t.root.push_back(std::pow(f.values()[flat], inv_s));
  }
  return t;
}

}  // namespace

GridFunction sup_convolution(const GridFunction& f,
                             const GridFunction& g,
                             const RationalWeight& lambda,
                             const ConcavityIndex& s) {
  if (f.dim() != g.dim()) throw AlignmentError("sup-convolution inputs differ in dimension");
  const auto lattice = detail::refined_lattice(f.origin(), g.origin(), f.spacing(), g.spacing(), lambda);

  const std::size_t n = f.dim();
  std::vector<std::size_t> shape(n);
  for (std::size_t a = 0; a < n; ++a) {
    shape[a] = static_cast<std::size_t>(lattice.first_coeff * static_cast<std::int64_t>(f.shape()[a] - 1) +
                                        lattice.second_coeff * static_cast<std::int64_t>(g.shape()[a] - 1) + 1);
  }
  std::vector<std::size_t> strides(n, 1);
  for (std::size_t a = n; a-- > 1;) strides[a - 1] = strides[a] * shape[a];
  std::size_t total = strides[0] * shape[0];

  const double inv_s = s.inverse();
  const auto tf = support_table(f, lattice.first_coeff, strides, inv_s);
  const auto tg = support_table(g, lattice.second_coeff, strides, inv_s);
  const double w0 = lambda.complement();
  const double w1 = lambda.value();

  // Every contribution is strictly positive, so 0 marks "no contribution".
  // Workers own disjoint slices of f's support and private buffers; the final
  // max-merge is exact, hence independent of the worker count.
  const std::size_t workers = std::min(thread_count(), std::max<std::size_t>(1, tf.root.size()));
  std::vector<std::vector<double>> partial(workers);
  parallel_for(tf.root.size(), [&](std::size_t begin, std::size_t end, std::size_t w) {
    auto& best = partial[w];
    best.assign(total, 0.0);
    for (std::size_t i = begin; i < end; ++i) {
      const double base = w0 * tf.root[i];
      double* out = best.data() + tf.offset[i];
      for (std::size_t j = 0; j < tg.root.size(); ++j) {
        const double v = base + w1 * tg.root[j];
        double& slot = out[tg.offset[j]];
        if (v > slot) slot = v;
      }
    }
  }, workers);

  std::vector<double> values(total, 0.0);
  for (const auto& best : partial) {
    if (best.empty()) continue;
    for (std::size_t k = 0; k < total; ++k) values[k] = std::max(values[k], best[k]);
  }
  const double sv = s.value();
  for (double& v : values) {
    if (v > 0) v = std::pow(v, sv);
  }
  return GridFunction(lattice.origin, lattice.spacing, std::move(shape), std::move(values),
                      std::max(f.zero_threshold(), g.zero_threshold()));
}

BblDeficit bbl_deficit(const GridFunction& f,
                       const GridFunction& g,
                       const std::optional<GridFunction>& h,
                       const RationalWeight& lambda,
                       const ConcavityIndex& s) {
  if (f.dim() != g.dim()) throw AlignmentError("f and g differ in dimension");
  const double mass_f = integrate(f);
  const double mass_g = integrate(g);
  if (!(mass_f > 0) || !(mass_g > 0)) throw DomainError("f and g must have positive mass");
  BblDeficit out;
  out.lhs = h ? integrate(*h) : integrate(sup_convolution(f, g, lambda, s));
  out.rhs = q_mean(mass_f, mass_g, lambda.value(),
                   MeanOrder(s.dimension_exponent(static_cast<int>(f.dim()))));
  out.deficit = out.lhs - out.rhs;
  out.delta = out.deficit / out.rhs;
  return out;
}

}  // namespace bblab
