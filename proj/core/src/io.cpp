#include "bblab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bblab/errors.hpp"

namespace bblab {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out + "\"";
}

template <typename Range, typename Fmt>
std::string array(const Range& r, Fmt&& fmt) {
  std::string out = "[";
  bool first = true;
  for (const auto& x : r) {
    if (!first) out += ',';
    first = false;
    out += fmt(x);
  }
  return out + "]";
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

// Typed field access; type mismatches are format errors.
template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("key \"") + key + "\" has the wrong type");
  }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

std::string to_json(const GridFunction& f) {
  std::string out = "{\"dim\":" + std::to_string(f.dim());
  out += ",\"origin\":" + array(f.origin(), num);
  out += ",\"spacing\":" + num(f.spacing());
  out += ",\"shape\":" + array(f.shape(), [](std::size_t n) { return std::to_string(n); });
  if (f.zero_threshold() != kDefaultZeroThreshold) out += ",\"zero_threshold\":" + num(f.zero_threshold());
  out += ",\"values\":" + array(f.values(), num);
  return out + "}\n";
}

GridFunction grid_from_json(std::string_view text) {
  const json j = parse(text);
  const auto dim = field<std::size_t>(j, "dim");
  auto origin = field<std::vector<double>>(j, "origin");
  auto shape = field<std::vector<std::size_t>>(j, "shape");
  if (origin.size() != dim || shape.size() != dim) throw DomainError("grid dim does not match origin/shape");
  return GridFunction(std::move(origin), field<double>(j, "spacing"), std::move(shape),
                      field<std::vector<double>>(j, "values"),
                      field_or<double>(j, "zero_threshold", kDefaultZeroThreshold));
}

std::string to_json(const VoxelSet& v, std::optional<std::size_t> n_split) {
  std::string out = "{\"dim\":" + std::to_string(v.dim());
  if (n_split) out += ",\"n_split\":" + std::to_string(*n_split);
  out += ",\"origin\":" + array(v.origin(), num);
  out += ",\"spacing\":" + num(v.spacing());
  const std::size_t m = v.dim();
  out += ",\"cells\":" + array(v.cells(), [m](const Cell& c) {
    std::string s = "[";
    for (std::size_t a = 0; a < m; ++a) {
      if (a) s += ',';
      s += std::to_string(c[a]);
    }
    return s + "]";
  });
  return out + "}\n";
}

std::string to_json(const LiftedBody& body) {
  std::string out = to_json(body.voxels, body.n_split);
  out.pop_back();  // newline
  out.pop_back();  // closing brace
  out += ",\"fiber_dim\":" + std::to_string(body.fiber_dim);
  out += ",\"source\":" + json_string(to_string(body.source));
  return out + "}\n";
}

VoxelDocument voxels_from_json(std::string_view text) {
  const json j = parse(text);
  const auto dim = field<std::size_t>(j, "dim");
  if (dim < 1 || dim > kMaxDim) throw DomainError("voxel dimension must be between 1 and 4");
  auto origin = field<std::vector<double>>(j, "origin");
  const auto raw = field<std::vector<std::vector<std::int64_t>>>(j, "cells");
  std::vector<Cell> cells;
  cells.reserve(raw.size());
  for (const auto& r : raw) {
    if (r.size() != dim) throw DomainError("voxel cell has the wrong number of coordinates");
    Cell c{};
    std::copy(r.begin(), r.end(), c.begin());
    cells.push_back(c);
  }
  std::optional<std::size_t> n_split;
  if (j.contains("n_split")) n_split = field<std::size_t>(j, "n_split");
  return {VoxelSet(dim, std::move(origin), field<double>(j, "spacing"), std::move(cells)), n_split};
}

std::string to_json(const StabilityReport& r) {
  auto strings = [](const std::vector<std::string>& v) { return array(v, [](const std::string& s) { return json_string(s); }); };
  std::string out = "{";
  out += "\"F\":" + num(r.F);
  out += ",\"G\":" + num(r.G);
  out += ",\"lhs\":" + num(r.lhs);
  out += ",\"rhs\":" + num(r.rhs);
  out += ",\"epsilon\":" + num(r.epsilon);
  out += ",\"delta\":" + num(r.delta);
  out += ",\"mu_f\":" + num(r.mu_f);
  out += ",\"mu_g\":" + num(r.mu_g);
  out += ",\"translation\":" + array(r.translation, num);
  out += ",\"witness_deficit\":" + num(r.witness_deficit);
  out += ",\"log_bound\":" + num(r.log_bound);
  out += ",\"vacuous\":" + std::string(r.vacuous ? "true" : "false");
  out += ",\"route\":" + json_string(to_string(r.route));
  out += ",\"s\":" + num(r.s);
  out += ",\"s_effective\":" + num(r.s_effective);
  out += ",\"route_dimension\":" + std::to_string(r.route_dimension);
  out += ",\"route_epsilon\":" + num(r.route_epsilon);
  out += ",\"eta\":" + num(r.eta);
  out += ",\"hypothesis_transfer\":" + std::string(r.hypothesis_transfer ? "true" : "false");
  out += ",\"search_evaluations\":" + std::to_string(r.search_evaluations);
  out += ",\"warnings\":" + strings(r.warnings);
  out += ",\"notes\":" + strings(r.notes);
  return out + "}\n";
}

StabilityReport report_from_json(std::string_view text) {
  const json j = parse(text);
  StabilityReport r;
  r.F = field<double>(j, "F");
  r.G = field<double>(j, "G");
  r.lhs = field<double>(j, "lhs");
  r.rhs = field<double>(j, "rhs");
  r.epsilon = field<double>(j, "epsilon");
  r.delta = field<double>(j, "delta");
  r.mu_f = field<double>(j, "mu_f");
  r.mu_g = field<double>(j, "mu_g");
  r.translation = field<std::vector<double>>(j, "translation");
  r.witness_deficit = field<double>(j, "witness_deficit");
  r.log_bound = field<double>(j, "log_bound");
  r.vacuous = field<bool>(j, "vacuous");
  const auto route = field<std::string>(j, "route");
  bool known = false;
  for (Route candidate : {Route::integer_s, Route::rational_lift, Route::integer_part_fallback}) {
    if (route == to_string(candidate)) {
      r.route = candidate;
      known = true;
    }
  }
  if (!known) throw FormatError("unknown route \"" + route + "\"");
  r.s = field<double>(j, "s");
  r.s_effective = field<double>(j, "s_effective");
  r.route_dimension = field<int>(j, "route_dimension");
  r.route_epsilon = field<double>(j, "route_epsilon");
  r.eta = field<double>(j, "eta");
  r.hypothesis_transfer = field<bool>(j, "hypothesis_transfer");
  r.search_evaluations = field<std::size_t>(j, "search_evaluations");
  r.warnings = field<std::vector<std::string>>(j, "warnings");
  r.notes = field<std::vector<std::string>>(j, "notes");
  return r;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << text;
  if (!out) throw FileError("write failed for " + path);
}

}  // namespace bblab
