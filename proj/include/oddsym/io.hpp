#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddsym/errors.hpp"
#include "oddsym/functionals.hpp"
#include "oddsym/group.hpp"
#include "oddsym/harmonic.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/symbol.hpp"
#include "oddsym/trigpoly.hpp"

// One self-describing JSON format for symbols, functional specs, and paths.
// Scalars travel as canonical text, so round trips are exact and fixtures
// diff cleanly.

namespace oddsym {

using Json = nlohmann::ordered_json;

inline Json trig_to_json(const TrigPoly& p) {
  Json list = Json::array();
  for (const auto& [k, c] : p.coeffs()) {
    Json entry;
    entry["freq"] = std::vector<int>(k.begin(), k.begin() + p.dim());
    entry["scalar"] = c.to_string();
    list.push_back(entry);
  }
  return list;
}

inline Json symbol_to_json(const FormalSymbol& s) {
  Json j;
  j["n"] = s.dim();
  j["order"] = s.order();
  j["floor"] = s.floor();
  j["exact"] = s.exact();
  j["odd_class_declared"] = is_odd_class(s);
  Json comps = Json::array();
  for (const auto& [d, c] : s.components()) {
    Json jc;
    jc["degree"] = d;
    Json layers = Json::array();
    for (const auto& [l, h] : c.layers()) {
      for (const auto& [b, t] : h.monomials()) {
        Json entry;
        entry["beta"] = std::vector<int>(b.begin(), b.begin() + s.dim());
        entry["coeff"] = trig_to_json(t);
        layers.push_back(entry);
      }
    }
    jc["layers"] = layers;
    comps.push_back(jc);
  }
  j["components"] = comps;
  return j;
}

namespace detail {

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) throw parse_error(std::string("missing field: ") + name);
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw parse_error(std::string("malformed field: ") + name);
  }
}

inline std::array<int, 3> index_triple(const Json& j, const char* name, int n) {
  std::vector<int> v = field<std::vector<int>>(j, name);
  if (static_cast<int>(v.size()) != n)
    throw parse_error(std::string(name) + " length does not match the dimension");
  std::array<int, 3> out{0, 0, 0};
  for (int i = 0; i < n; ++i) out[i] = v[i];
  return out;
}

}  // namespace detail

inline TrigPoly trig_from_json(const Json& list, int n) {
  if (!list.is_array()) throw parse_error("coefficient list must be an array");
  TrigPoly p(n);
  for (const auto& entry : list) {
    Freq k = detail::index_triple(entry, "freq", n);
    std::string text = detail::field<std::string>(entry, "scalar");
    ExactScalar c;
    try {
      c = ExactScalar::parse(text);
    } catch (const std::exception&) {
      throw parse_error("bad scalar text: " + text);
    }
    p.add_term(k, c);
  }
  return p;
}

inline FormalSymbol symbol_from_json(const Json& j) {
  const int n = detail::field<int>(j, "n");
  if (n != 1 && n != 3) throw parse_error("dimension must be 1 or 3");
  const int order = detail::field<int>(j, "order");
  const int floor = detail::field<int>(j, "floor");
  const bool exact = detail::field<bool>(j, "exact");
  const bool declared = detail::field<bool>(j, "odd_class_declared");
  if (floor > order) throw parse_error("floor above order");
  FormalSymbol s(n, order, floor, exact);
  if (!j.contains("components")) throw parse_error("missing field: components");
  for (const auto& jc : j.at("components")) {
    const int d = detail::field<int>(jc, "degree");
    if (d < floor || d > order) throw parse_error("component degree outside [floor, order]");
    std::map<int, XiPoly> layers;
    if (!jc.contains("layers")) throw parse_error("missing field: layers");
    for (const auto& entry : jc.at("layers")) {
      Beta b = detail::index_triple(entry, "beta", n);
      int l = 0;
      for (int i = 0; i < n; ++i) {
        if (b[i] < 0) throw parse_error("negative monomial exponent");
        l += b[i];
      }
      TrigPoly t = trig_from_json(entry.at("coeff"), n);
      auto it = layers.find(l);
      if (it == layers.end()) it = layers.emplace(l, XiPoly(n, l)).first;
      it->second.add_term(b, t);
    }
    HomogeneousComponent c(n, d);
    for (const auto& [l, p] : layers) {
      if (!p.is_harmonic()) throw parse_error("layer polynomial is not harmonic");
      c.add_layer(l, p);
    }
    s.set_component(d, c);
  }
  if (declared != is_odd_class(s))
    throw parse_error("odd_class_declared does not match the stored components");
  return s;
}

inline Json rho_to_json(const RhoSpec& rho) {
  Json j;
  j["n"] = rho.n;
  j["order"] = rho.order;
  Json list = Json::array();
  for (const auto& [d, pairings] : rho.pairings) {
    for (const auto& p : pairings) {
      Json entry;
      entry["degree"] = d;
      entry["freq"] = std::vector<int>(p.freq.begin(), p.freq.begin() + rho.n);
      entry["layer"] = p.layer;
      entry["beta"] = std::vector<int>(p.beta.begin(), p.beta.begin() + rho.n);
      entry["weight"] = p.weight.to_string();
      list.push_back(entry);
    }
  }
  j["pairings"] = list;
  return j;
}

inline RhoSpec rho_from_json(const Json& j) {
  RhoSpec rho;
  rho.n = detail::field<int>(j, "n");
  if (rho.n != 1 && rho.n != 3) throw parse_error("dimension must be 1 or 3");
  rho.order = detail::field<int>(j, "order");
  if (!j.contains("pairings")) throw parse_error("missing field: pairings");
  for (const auto& entry : j.at("pairings")) {
    const int d = detail::field<int>(entry, "degree");
    RhoPairing p;
    p.freq = detail::index_triple(entry, "freq", rho.n);
    p.layer = detail::field<int>(entry, "layer");
    p.beta = detail::index_triple(entry, "beta", rho.n);
    std::string text = detail::field<std::string>(entry, "weight");
    try {
      p.weight = ExactScalar::parse(text);
    } catch (const std::exception&) {
      throw parse_error("bad scalar text: " + text);
    }
    rho.pairings[d].push_back(p);
  }
  try {
    validate_rho(rho);
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
  return rho;
}

inline Json path_to_json(const PolynomialPath& path) {
  Json j;
  Json list = Json::array();
  for (const auto& c : path.coefficients) list.push_back(symbol_to_json(c));
  j["coefficients"] = list;
  return j;
}

inline PolynomialPath path_from_json(const Json& j) {
  if (!j.contains("coefficients")) throw parse_error("missing field: coefficients");
  PolynomialPath path;
  for (const auto& jc : j.at("coefficients")) path.coefficients.push_back(symbol_from_json(jc));
  if (path.coefficients.empty()) throw parse_error("empty path");
  return path;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write file: " + path);
  out << j.dump() << "\n";
}

}  // namespace oddsym
