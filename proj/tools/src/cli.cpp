#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "bblab/bodies.hpp"
#include "bblab/envelope.hpp"
#include "bblab/errors.hpp"
#include "bblab/experiment.hpp"
#include "bblab/io.hpp"
#include "bblab/means.hpp"
#include "bblab/stability.hpp"
#include "bblab/supconv.hpp"
#include "bblab/symmetry.hpp"

namespace bblab::cli {

namespace {

struct OutputError : Error {
  using Error::Error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GridFunction load_grid(const std::string& path) { return grid_from_json(read_text_file(path)); }
VoxelDocument load_voxels(const std::string& path) { return voxels_from_json(read_text_file(path)); }

void save(const std::string& path, const std::string& text) {
  try {
    write_text_file(path, text);
  } catch (const FileError& e) {
    throw OutputError(e.what());
  }
}

// Real number given as a decimal or as "p/q".
double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const double a = std::stod(text.substr(0, slash));
    const double b = std::stod(text.substr(slash + 1));
    if (b == 0) throw DomainError("zero denominator in \"" + text + "\"");
    return a / b;
  }
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw DomainError("not a number: \"" + text + "\"");
  return v;
}

MeanOrder parse_order(const std::string& text) {
  if (text == "inf" || text == "+inf") return MeanOrder::plus_infinity();
  if (text == "-inf") return MeanOrder::minus_infinity();
  return MeanOrder(parse_real(text));
}

std::string object(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string out = "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += '"' + fields[i].first + "\":" + fields[i].second;
  }
  return out + "}\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Borell-Brascamp-Lieb laboratory", "bblab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::function<void()> action;

  // mean
  double a = 0, b = 0;
  std::string lambda_text, q_text, s_text;
  auto* mean = app.add_subcommand("mean", "Weighted q-mean of two numbers");
  mean->add_option("--a", a, "First value")->required();
  mean->add_option("--b", b, "Second value")->required();
  mean->add_option("--lambda", lambda_text, "Weight in (0,1), decimal or j/k")->required();
  mean->add_option("--q", q_text, "Order: number, p/q, inf or -inf")->required();
  mean->callback([&] {
    action = [&] {
      out << object({{"mean", num(q_mean(a, b, parse_real(lambda_text), parse_order(q_text)))}});
    };
  });

  // supconv
  std::string f_path, g_path, h_path, out_path;
  auto* supconv = app.add_subcommand("supconv", "Discrete supremal convolution");
  supconv->add_option("--f", f_path)->required();
  supconv->add_option("--g", g_path)->required();
  supconv->add_option("--lambda", lambda_text, "Weight j/k")->required();
  supconv->add_option("--s", s_text, "Concavity index, p/q or decimal")->required();
  supconv->add_option("--out", out_path)->required();
  supconv->callback([&] {
    action = [&] {
      const auto h = sup_convolution(load_grid(f_path), load_grid(g_path), RationalWeight::parse(lambda_text),
                                     ConcavityIndex::parse(s_text));
      save(out_path, to_json(h));
    };
  });

  // bbl
  auto* bbl = app.add_subcommand("bbl", "Borell-Brascamp-Lieb deficit");
  bbl->add_option("--f", f_path)->required();
  bbl->add_option("--g", g_path)->required();
  bbl->add_option("--h", h_path, "Defaults to the supremal convolution");
  bbl->add_option("--lambda", lambda_text)->required();
  bbl->add_option("--s", s_text)->required();
  bbl->callback([&] {
    action = [&] {
      std::optional<GridFunction> h;
      if (!h_path.empty()) h = load_grid(h_path);
      const auto d = bbl_deficit(load_grid(f_path), load_grid(g_path), h, RationalWeight::parse(lambda_text),
                                 ConcavityIndex::parse(s_text));
      out << object({{"lhs", num(d.lhs)}, {"rhs", num(d.rhs)}, {"deficit", num(d.deficit)}, {"delta", num(d.delta)}});
    };
  });

  // lift
  auto* lift = app.add_subcommand("lift", "Lifted body over a function");
  lift->add_option("--f", f_path)->required();
  lift->add_option("--s", s_text, "Integer or rational p/q")->required();
  lift->add_option("--out", out_path)->required();
  lift->callback([&] {
    action = [&] {
      const auto s = ConcavityIndex::parse(s_text);
      const auto f = load_grid(f_path);
      if (!s.is_rational()) throw DomainError("lifting needs a rational concavity index");
      const LiftedBody body = s.is_integer() ? lift_graph(f, static_cast<int>(s.numerator())) : lift_product(f, s);
      save(out_path, to_json(body));
    };
  });

  // minkowski
  std::string a_path, b_path, rule_text = "cells";
  auto* minkowski = app.add_subcommand("minkowski", "Minkowski combination of voxel sets");
  minkowski->add_option("--a", a_path)->required();
  minkowski->add_option("--b", b_path)->required();
  minkowski->add_option("--lambda", lambda_text)->required();
  minkowski->add_option("--rule", rule_text, "cells or centers")->check(CLI::IsMember({"cells", "centers"}));
  minkowski->add_option("--out", out_path)->required();
  minkowski->callback([&] {
    action = [&] {
      const auto rule = rule_text == "centers" ? MinkowskiRule::centers : MinkowskiRule::cells;
      const auto s = minkowski_combine(load_voxels(a_path).voxels, load_voxels(b_path).voxels,
                                       RationalWeight::parse(lambda_text), rule);
      save(out_path, to_json(s));
    };
  });

  // bm
  auto* bm = app.add_subcommand("bm", "Brunn-Minkowski deficit of two voxel sets");
  bm->add_option("--a", a_path)->required();
  bm->add_option("--b", b_path)->required();
  bm->add_option("--lambda", lambda_text)->required();
  bm->callback([&] {
    action = [&] {
      const auto d = bm_deficit(load_voxels(a_path).voxels, load_voxels(b_path).voxels,
                                RationalWeight::parse(lambda_text));
      out << object({{"measure_s", num(d.measure_s)}, {"rhs", num(d.rhs)}, {"delta", num(d.delta)}});
    };
  });

  // symmetrize
  std::string body_path;
  std::size_t n_split = 0;
  auto* symmetrize = app.add_subcommand("symmetrize", "Slice-wise symmetrization of a voxel body");
  symmetrize->add_option("--body", body_path)->required();
  symmetrize->add_option("--nsplit", n_split, "Number of base axes (default: from the file)");
  symmetrize->add_option("--out", out_path)->required();
  symmetrize->callback([&] {
    action = [&] {
      auto doc = load_voxels(body_path);
      const std::size_t split = n_split ? n_split : doc.n_split.value_or(0);
      const auto sym = s_symmetrize(SplitBody(std::move(doc.voxels), split));
      save(out_path, to_json(sym.voxels(), sym.n_split()));
    };
  });

  // envelope
  std::string p_text;
  auto* envelope = app.add_subcommand("envelope", "Least p-concave majorant");
  envelope->add_option("--f", f_path)->required();
  envelope->add_option("--p", p_text, "Exponent p > 0, decimal or a/b")->required();
  envelope->add_option("--out", out_path)->required();
  envelope->callback([&] {
    action = [&] { save(out_path, to_json(p_concave_envelope(load_grid(f_path), parse_real(p_text)))); };
  });

  // stability
  StabilityConfig config;
  auto* stability = app.add_subcommand("stability", "Stability report for a triple (f, g, h)");
  stability->add_option("--f", f_path)->required();
  stability->add_option("--g", g_path)->required();
  stability->add_option("--h", h_path);
  stability->add_option("--lambda", lambda_text)->required();
  stability->add_option("--s", s_text)->required();
  stability->add_option("--out", out_path, "Report file (default: standard output)");
  stability->add_option("--N", config.n_override, "Exponent N of the constants")->check(CLI::PositiveNumber);
  stability->add_option("--eta-floor", config.eta_floor)->check(CLI::PositiveNumber);
  stability->add_option("--mass-tolerance", config.mass_tolerance)->check(CLI::NonNegativeNumber);
  stability->callback([&] {
    action = [&] {
      std::optional<GridFunction> h;
      if (!h_path.empty()) h = load_grid(h_path);
      const auto r = stability_report(load_grid(f_path), load_grid(g_path), h,
                                      RationalWeight::parse(lambda_text), ConcavityIndex::parse(s_text), config);
      if (out_path.empty()) {
        out << to_json(r);
      } else {
        save(out_path, to_json(r));
      }
    };
  });

  // constants
  int n = 0;
  std::string tau_text;
  double big_n = 1.0;
  auto* constants = app.add_subcommand("constants", "Figalli-Jerison constants in log form");
  constants->add_option("--n", n)->required();
  constants->add_option("--tau", tau_text, "tau in (0, 1/2], decimal or j/k")->required();
  constants->add_option("--N", big_n)->check(CLI::PositiveNumber);
  constants->callback([&] {
    action = [&] {
      const auto c = fj_log_constants(n, parse_real(tau_text), big_n);
      out << object({{"n", std::to_string(c.n)},
                     {"tau", num(c.tau)},
                     {"N", num(c.n_override)},
                     {"log_M", num(static_cast<double>(c.log_M))},
                     {"log_sigma", num(static_cast<double>(c.log_sigma))},
                     {"sigma", num(static_cast<double>(c.sigma()))}});
    };
  });

  // experiment spike-sweep
  std::string base_path;
  std::vector<double> masses;
  SpikeSweepConfig sweep;
  std::string sweep_lambda = "1/2", sweep_s = "1";
  auto* experiment = app.add_subcommand("experiment", "Parameter sweeps");
  experiment->require_subcommand(1);
  auto* spike = experiment->add_subcommand("spike-sweep", "Stability trend under a growing bump");
  spike->add_option("--base", base_path)->required();
  spike->add_option("--masses", masses, "Comma-separated bump masses")->required()->delimiter(',');
  spike->add_option("--out", out_path)->required();
  spike->add_option("--lambda", sweep_lambda);
  spike->add_option("--s", sweep_s);
  spike->add_option("--bump-fraction", sweep.bump_fraction)->check(CLI::PositiveNumber);
  spike->callback([&] {
    action = [&] {
      sweep.lambda = RationalWeight::parse(sweep_lambda);
      sweep.s = parse_real(sweep_s);
      const auto rows = spike_sweep(load_grid(base_path), masses, sweep);
      std::ostringstream csv;
      write_sweep_csv(csv, rows);
      save(out_path, csv.str());
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "bblab: " << e.what() << "\n";
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) {
      failing = sub;
      for (auto* inner : sub->get_subcommands()) failing = inner;
    }
    err << failing->help();
    return kUsage;
  }

  try {
    if (action) action();
    return kOk;
  } catch (const FormatError& e) {
    err << "bblab: " << e.what() << "\n";
    return kBadInput;
  } catch (const OutputError& e) {
    err << "bblab: " << e.what() << "\n";
    return kCantCreate;
  } catch (const FileError& e) {
    err << "bblab: " << e.what() << "\n";
    return kNoInput;
  } catch (const Error& e) {
    err << "bblab: " << e.what() << "\n";
    return kDomain;
  } catch (const std::invalid_argument& e) {
    err << "bblab: invalid number\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "bblab: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace bblab::cli
