#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentkit/errors.hpp"
#include "momentkit/function_spec.hpp"
#include "momentkit/moments.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/quadrature.hpp"
#include "momentkit/sandwich.hpp"
#include "momentkit/sos.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

using Json = nlohmann::json;

/// Serialize with doubles at 17 significant digits so every 64-bit float
/// round-trips, integers as integers, and object keys in sorted order;
/// identical values always produce identical bytes.
inline std::string dumpJson(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return "null";
    case Json::value_t::boolean:
      return j.get<bool>() ? "true" : "false";
    case Json::value_t::number_integer:
      return std::to_string(j.get<std::int64_t>());
    case Json::value_t::number_unsigned:
      return std::to_string(j.get<std::uint64_t>());
    case Json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      return buf;
    }
    case Json::value_t::string:
      return Json(j.get<std::string>()).dump();
    case Json::value_t::array: {
      std::string out = "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",";
        out += dumpJson(j[i]);
      }
      return out + "]";
    }
    case Json::value_t::object: {
      std::string out = "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += Json(it.key()).dump();
        out += ":";
        out += dumpJson(it.value());
      }
      return out + "}";
    }
    default:
      throw InvalidArgument("dumpJson: unsupported JSON value type");
  }
}

inline Json parseJson(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(what + ": malformed JSON");
  return j;
}

namespace detail {

inline VectorX<double> numberArray(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of numbers");
  VectorX<double> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(what + ": entry " + std::to_string(i) + " not a number");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

inline Json toArray(const VectorX<double>& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace detail

// ---- moment sequences: {"moments": [s0, s1, ...]} ----

inline MomentSequence<double> momentsFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("moments")) {
    throw ParseError("moment sequence: expected {\"moments\": [...]}");
  }
  return MomentSequence<double>(detail::numberArray(j["moments"], "moments"));
}

inline Json toJson(const MomentSequence<double>& s) {
  return Json{{"moments", detail::toArray(s.moments())}};
}

// ---- polynomials: {"coeffs": [c0, c1, ...]} ----

inline Polynomial<double> polynomialFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs")) {
    throw ParseError("polynomial: expected {\"coeffs\": [...]}");
  }
  return Polynomial<double>(detail::numberArray(j["coeffs"], "coeffs"));
}

inline Json toJson(const Polynomial<double>& p) {
  return Json{{"coeffs", detail::toArray(p.coeffs())}};
}

// ---- atomic measures: {"atoms": [{"node": x, "weight": w}, ...]} ----

inline AtomicMeasure<double> measureFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
    throw ParseError("measure: expected {\"atoms\": [{\"node\":..,\"weight\":..}, ...]}");
  }
  AtomicMeasure<double> mu;
  for (const Json& a : j["atoms"]) {
    if (!a.is_object() || !a.contains("node") || !a.contains("weight") ||
        !a["node"].is_number() || !a["weight"].is_number()) {
      throw ParseError("measure: each atom needs numeric \"node\" and \"weight\"");
    }
    mu.atoms.push_back({a["node"].get<double>(), a["weight"].get<double>()});
  }
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    if (!(mu.atoms[i].weight > 0.0)) throw ParseError("measure: weights must be positive");
    if (i > 0 && !(mu.atoms[i].node > mu.atoms[i - 1].node)) {
      throw ParseError("measure: nodes must be strictly increasing");
    }
  }
  return mu;
}

inline Json toJson(const AtomicMeasure<double>& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms) atoms.push_back(Json{{"node", a.node}, {"weight", a.weight}});
  return Json{{"atoms", atoms}};
}

// ---- function specs ----
// Builtin: {"kind":"builtin","name":...,"params":{...},"domain":[lo,hi]}
// Sampled: {"kind":"sampled","grid":[...],"values":[...],"domain":[lo,hi]}

inline FunctionSpec functionFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("domain")) {
    throw ParseError("function: expected {\"kind\":..., \"domain\":[lo,hi], ...}");
  }
  const Json& dom = j["domain"];
  if (!dom.is_array() || dom.size() != 2 || !dom[0].is_number() || !dom[1].is_number()) {
    throw ParseError("function: domain must be [lo, hi]");
  }
  const Interval<double> domain{dom[0].get<double>(), dom[1].get<double>()};
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";

  if (kind == "sampled") {
    if (!j.contains("grid") || !j.contains("values")) {
      throw ParseError("function: sampled spec needs \"grid\" and \"values\"");
    }
    return FunctionSpec::sampled(detail::numberArray(j["grid"], "grid"),
                                 detail::numberArray(j["values"], "values"), domain);
  }
  if (kind != "builtin") throw ParseError("function: kind must be \"builtin\" or \"sampled\"");
  if (!j.contains("name") || !j["name"].is_string()) {
    throw ParseError("function: builtin spec needs a \"name\"");
  }
  const std::string name = j["name"].get<std::string>();
  const Json params = j.contains("params") ? j["params"] : Json::object();

  if (name == "constant") {
    if (!params.contains("c") || !params["c"].is_number()) {
      throw ParseError("function: constant needs params.c");
    }
    return FunctionSpec::constant(params["c"].get<double>(), domain);
  }
  if (name == "abs") return FunctionSpec::absValue(domain);
  if (name == "gaussian_bump") return FunctionSpec::gaussianBump(domain);
  if (name == "sine") return FunctionSpec::sine(domain);
  if (name == "trunc_monomial") {
    if (!params.contains("n") || !params.contains("k") || !params["n"].is_number_integer() ||
        !params["k"].is_number_integer()) {
      throw ParseError("function: trunc_monomial needs integer params.n and params.k");
    }
    return FunctionSpec::truncMonomial(params["n"].get<Index>(), params["k"].get<Index>(), domain);
  }
  throw ParseError("function: unknown builtin \"" + name + "\"");
}

inline Json toJson(const FunctionSpec& g) {
  Json j;
  j["domain"] = Json::array({g.domain().lo, g.domain().hi});
  if (g.kind() == FunctionSpec::Kind::Sampled) {
    j["kind"] = "sampled";
    j["grid"] = detail::toArray(g.sampleGrid());
    j["values"] = detail::toArray(g.sampleValues());
    return j;
  }
  j["kind"] = "builtin";
  j["name"] = g.name();
  Json params = Json::object();
  if (g.name() == "constant") params["c"] = g.paramC();
  if (g.name() == "trunc_monomial") {
    params["n"] = static_cast<std::int64_t>(g.paramN());
    params["k"] = static_cast<std::int64_t>(g.paramK());
  }
  j["params"] = params;
  return j;
}

// ---- verdicts and reports ----

inline Json toJson(const PsdVerdict<double>& v) {
  Json j;
  j["is_psd"] = v.is_psd;
  j["min_eigenvalue"] = v.min_eigenvalue;
  j["witness"] = v.witness ? detail::toArray(*v.witness) : Json();
  return j;
}

inline Json toJson(const SosCertificate& cert) {
  return Json{{"p", toJson(cert.p)}, {"q", toJson(cert.q)}, {"residual", cert.residual}};
}

inline Json toJson(const NegativityWitness& w) {
  return Json{{"witness", Json{{"x0", w.x0}, {"value", w.value}}}};
}

inline Json toJson(const MomentReport<double>& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back(Json{{"k", static_cast<std::int64_t>(e.k)},
                           {"measure_moment", e.measure_moment},
                           {"target", e.target},
                           {"abs_error", e.abs_error},
                           {"pass", e.pass}});
  }
  return Json{{"entries", entries}, {"all_pass", report.all_pass}};
}

inline Json toJson(const SandwichResult& r) {
  return Json{{"lower", r.lower},
              {"upper", r.upper},
              {"e", r.e},
              {"minorant", toJson(r.minorant)},
              {"majorant", toJson(r.majorant)},
              {"degree", static_cast<std::int64_t>(r.degree)},
              {"grid_size", static_cast<std::int64_t>(r.grid_size)}};
}

}  // namespace momentkit
