#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "plsigma/ball.hpp"
#include "plsigma/certificate.hpp"
#include "plsigma/character.hpp"
#include "plsigma/classify.hpp"
#include "plsigma/corpus.hpp"
#include "plsigma/groupspec.hpp"

namespace plsigma {

using nlohmann::json;

// rationals travel as "num/den" strings, never as binary floats

inline json to_json(const Rat& q) { return q.str(); }

inline Rat rat_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
  return Rat::parse(j.get<std::string>());
}

inline json to_json(const LogReal& v) {
  if (v.log_coeffs().empty()) return v.rat_part().str();
  json logs = json::object();
  for (const auto& [p, c] : v.log_coeffs()) logs[std::to_string(p)] = c.str();
  return json{{"rat", v.rat_part().str()}, {"logs", logs}};
}

inline LogReal logreal_from_json(const json& j) {
  if (j.is_string()) return LogReal(Rat::parse(j.get<std::string>()));
  if (!j.is_object()) throw ParseError("expected a LogReal literal, got " + j.dump());
  LogReal v(j.contains("rat") ? rat_from_json(j.at("rat")) : Rat(0));
  if (j.contains("logs"))
    for (const auto& [key, val] : j.at("logs").items())
      v += LogReal::ln_term(std::stoull(key), rat_from_json(val));
  return v;
}

inline json to_json(const PLMap& m) {
  json bps = json::array();
  for (const auto& [x, y] : m.breakpoints()) bps.push_back(json::array({x.str(), y.str()}));
  return json{{"breakpoints", bps}, {"left_slope", m.left_slope().str()}, {"right_slope", m.right_slope().str()}};
}

inline PLMap plmap_from_json(const json& j) {
  std::vector<std::pair<Rat, Rat>> bps;
  for (const auto& p : j.at("breakpoints"))
    bps.emplace_back(rat_from_json(p.at(0)), rat_from_json(p.at(1)));
  return make_plmap(std::move(bps), rat_from_json(j.at("left_slope")), rat_from_json(j.at("right_slope")));
}

inline json to_json(const IntervalSpec& ival) {
  switch (ival.kind) {
    case IntervalSpec::Kind::Compact:
      return json{{"kind", "compact"}, {"a", ival.a.str()}, {"c", ival.c.str()}};
    case IntervalSpec::Kind::HalfLine:
      return json{{"kind", "halfline"}};
    default:
      return json{{"kind", "fullline"}};
  }
}

inline IntervalSpec interval_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "compact") return IntervalSpec::compact(rat_from_json(j.at("a")), rat_from_json(j.at("c")));
  if (kind == "halfline") return IntervalSpec::half_line();
  if (kind == "fullline") return IntervalSpec::full_line();
  throw ParseError("unknown interval kind '" + kind + "'");
}

inline json to_json(const GroupSpec& spec) {
  json gens = json::array();
  for (const auto& g : spec.generators) {
    json e = to_json(g.map);
    e["symbol"] = g.symbol;
    if (g.tag == GenTag::KerLeft) e["tag"] = "ker_left";
    if (g.tag == GenTag::KerRight) e["tag"] = "ker_right";
    gens.push_back(e);
  }
  return json{{"name", spec.name}, {"interval", to_json(spec.interval)}, {"generators", gens}};
}

inline GroupSpec groupspec_from_json(const json& j) {
  std::vector<Generator> gens;
  for (const auto& g : j.at("generators")) {
    GenTag tag = GenTag::Untagged;
    if (g.contains("tag")) {
      std::string t = g.at("tag").get<std::string>();
      if (t == "ker_left") tag = GenTag::KerLeft;
      else if (t == "ker_right") tag = GenTag::KerRight;
      else throw ParseError("unknown generator tag '" + t + "'");
    }
    gens.push_back({g.at("symbol").get<std::string>(), plmap_from_json(g), tag});
  }
  return GroupSpec(j.at("name").get<std::string>(), interval_from_json(j.at("interval")), std::move(gens));
}

inline json to_json(const Character& chi) {
  if (const auto* tc = std::get_if<TabledChar>(&chi)) {
    json vals = json::object();
    for (const auto& [sym, v] : tc->values) vals[sym] = to_json(v);
    return json{{"kind", "tabled"}, {"values", vals}};
  }
  const auto& gc = std::get<GermChar>(chi);
  // the four distinguished rays keep their short spellings
  if (gc == [] { GermChar c; c.chi_ell_coeff = Rat(1); return c; }()) return json{{"kind", "chi_ell"}};
  if (gc == [] { GermChar c; c.chi_r_coeff = Rat(1); return c; }()) return json{{"kind", "chi_r"}};
  if (gc == [] { GermChar c; c.t_left = Rat(1); return c; }()) return json{{"kind", "tau_ell"}};
  if (gc == [] { GermChar c; c.t_right = Rat(-1); return c; }()) return json{{"kind", "neg_tau_r"}};
  json w = json::object();
  for (const auto& [p, c] : gc.left_weights) w["L_" + std::to_string(p)] = c.str();
  for (const auto& [p, c] : gc.right_weights) w["R_" + std::to_string(p)] = c.str();
  if (!gc.t_left.is_zero()) w["T_l"] = gc.t_left.str();
  if (!gc.t_right.is_zero()) w["T_r"] = gc.t_right.str();
  if (!gc.chi_ell_coeff.is_zero()) w["chi_ell"] = gc.chi_ell_coeff.str();
  if (!gc.chi_r_coeff.is_zero()) w["chi_r"] = gc.chi_r_coeff.str();
  return json{{"kind", "germ"}, {"weights", w}};
}

inline Character character_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "chi_ell") return chi_ell();
  if (kind == "chi_r") return chi_r();
  if (kind == "tau_ell") return tau_ell();
  if (kind == "neg_tau_r") return neg_tau_r();
  if (kind == "tabled") {
    TabledChar tc;
    for (const auto& [sym, v] : j.at("values").items()) tc.values[sym] = logreal_from_json(v);
    return tc;
  }
  if (kind == "germ") {
    GermChar gc;
    for (const auto& [key, val] : j.at("weights").items()) {
      Rat c = rat_from_json(val);
      if (key == "T_l") gc.t_left = c;
      else if (key == "T_r") gc.t_right = c;
      else if (key == "chi_ell") gc.chi_ell_coeff = c;
      else if (key == "chi_r") gc.chi_r_coeff = c;
      else if (key.rfind("L_", 0) == 0) gc.left_weights[std::stoull(key.substr(2))] = c;
      else if (key.rfind("R_", 0) == 0) gc.right_weights[std::stoull(key.substr(2))] = c;
      else throw ParseError("unknown germ observable '" + key + "'");
    }
    return gc;
  }
  throw ParseError("unknown character kind '" + kind + "'");
}

// words as symbol lists, inverses spelled "A^-1"

inline json to_json(const Word& w, const GroupSpec& spec) {
  json a = json::array();
  for (const auto& [g, s] : w.letters)
    a.push_back(spec.generators.at(g).symbol + (s < 0 ? "^-1" : ""));
  return a;
}

inline Word word_from_json(const json& j, const GroupSpec& spec) {
  Word w;
  for (const auto& item : j) {
    std::string s = item.get<std::string>();
    int sign = 1;
    if (s.size() > 3 && s.substr(s.size() - 3) == "^-1") {
      sign = -1;
      s = s.substr(0, s.size() - 3);
    }
    w.append(spec.gen_index(s), sign);
  }
  return w;
}

inline json to_json(const BallIndex& ball, const GroupSpec& spec) {
  json elems = json::array();
  for (const auto& e : ball.elements) {
    json item = to_json(e.map);
    item["word"] = to_json(e.word, spec);
    elems.push_back(item);
  }
  json rels = json::array();
  for (const auto& r : ball.relations) rels.push_back(to_json(r, spec));
  return json{{"radius", ball.radius}, {"size", ball.size()}, {"elements", elems}, {"relations", rels}};
}

/// DOT emission of the ball graph; vertices are labelled by shortest words.
inline std::string ball_to_dot(const BallIndex& ball, const GroupSpec& spec) {
  std::string out = "digraph ball {\n";
  for (size_t i = 0; i < ball.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + spec.word_str(ball.elements[i].word) + "\"];\n";
  for (size_t i = 0; i < ball.size(); ++i)
    for (size_t g = 0; g < spec.generators.size(); ++g) {
      PLMap m = compose(ball.elements[i].map, spec.gen_map(static_cast<int>(g)));
      if (auto hit = ball.find(m))
        out += "  n" + std::to_string(i) + " -> n" + std::to_string(*hit) + " [label=\"" +
               spec.generators[g].symbol + "\"];\n";
    }
  out += "}\n";
  return out;
}

inline std::string window_kind_str(WitnessCase c) { return witness_case_name(c); }

inline WitnessCase window_kind_from_str(const std::string& s) {
  if (s == "left-shrink") return WitnessCase::LeftShrink;
  if (s == "right-shrink") return WitnessCase::RightShrink;
  if (s == "translation-left") return WitnessCase::TransLeft;
  if (s == "translation-right") return WitnessCase::TransRight;
  throw ParseError("unknown window kind '" + s + "'");
}

/// Certificates are self-contained: the group spec rides along so the
/// verifier needs nothing else.
inline json to_json(const MembershipCertificate& cert, const GroupSpec& spec) {
  json yp = json::array();
  for (const auto& y : cert.y_plus) yp.push_back(to_json(y, spec));
  json rels = json::array();
  for (size_t i = 0; i < cert.relation_lhs.size(); ++i)
    rels.push_back(json{{"lhs", to_json(cert.relation_lhs[i], spec)}, {"rhs", to_json(cert.relation_rhs[i], spec)}});
  return json{{"type", "membership"},
              {"group", to_json(spec)},
              {"chi", to_json(cert.chi)},
              {"y_plus", yp},
              {"t", to_json(cert.t, spec)},
              {"f", to_json(cert.f, spec)},
              {"h", to_json(cert.h, spec)},
              {"window_kind", window_kind_str(cert.window_kind)},
              {"commuting_shortcut", cert.commuting_shortcut},
              {"window_param", cert.window_param.str()},
              {"margin_param", cert.margin_param.str()},
              {"m", cert.m},
              {"relations", rels},
              {"flags",
               json{{"relation_identity", cert.flag_relation_identity},
                    {"valuation_gap", cert.flag_valuation_gap},
                    {"disjoint_supports", cert.flag_disjoint_supports},
                    {"window_geometry", cert.flag_window_geometry}}}};
}

inline MembershipCertificate membership_from_json(const json& j, const GroupSpec& spec) {
  MembershipCertificate cert;
  cert.chi = character_from_json(j.at("chi"));
  for (const auto& y : j.at("y_plus")) cert.y_plus.push_back(word_from_json(y, spec));
  cert.t = word_from_json(j.at("t"), spec);
  cert.f = word_from_json(j.at("f"), spec);
  cert.h = word_from_json(j.at("h"), spec);
  cert.window_kind = window_kind_from_str(j.at("window_kind").get<std::string>());
  cert.commuting_shortcut = j.at("commuting_shortcut").get<bool>();
  cert.window_param = rat_from_json(j.at("window_param"));
  cert.margin_param = rat_from_json(j.at("margin_param"));
  cert.m = j.at("m").get<long>();
  for (const auto& r : j.at("relations")) {
    cert.relation_lhs.push_back(word_from_json(r.at("lhs"), spec));
    cert.relation_rhs.push_back(word_from_json(r.at("rhs"), spec));
  }
  const auto& flags = j.at("flags");
  cert.flag_relation_identity = flags.at("relation_identity").get<bool>();
  cert.flag_valuation_gap = flags.at("valuation_gap").get<bool>();
  cert.flag_disjoint_supports = flags.at("disjoint_supports").get<bool>();
  cert.flag_window_geometry = flags.at("window_geometry").get<bool>();
  return cert;
}

inline std::string germ_ray_str(NonMembershipCertificate::GermRay r) {
  switch (r) {
    case NonMembershipCertificate::GermRay::ChiEll: return "chi_ell";
    case NonMembershipCertificate::GermRay::ChiR: return "chi_r";
    case NonMembershipCertificate::GermRay::TauEll: return "tau_ell";
    default: return "neg_tau_r";
  }
}

inline json to_json(const NonMembershipCertificate& cert, const GroupSpec& spec) {
  return json{{"type", "non_membership"},
              {"matched_ray", germ_ray_str(cert.matched)},
              {"theorem", cert.theorem},
              {"nonabelian_pair", json::array({to_json(cert.nonabelian_f, spec), to_json(cert.nonabelian_g, spec)})},
              {"irreducible", cert.irreducible},
              {"ray_match_verified", cert.ray_match_verified}};
}

inline json to_json(const ConnectivityReport& r) {
  return json{{"radius", r.radius},
              {"nonneg_vertices", r.nonneg_vertices},
              {"components", r.components},
              {"identity_component_size", r.identity_component_size},
              {"evidence_only", r.evidence_only}};
}

inline json to_json(const RayClassification& rc, const GroupSpec& spec) {
  json j;
  switch (rc.verdict) {
    case RayClassification::Verdict::Member: j["verdict"] = "member"; break;
    case RayClassification::Verdict::NonMember: j["verdict"] = "non_member"; break;
    default: j["verdict"] = "unknown"; break;
  }
  if (rc.membership) j["certificate"] = to_json(*rc.membership, spec);
  if (rc.non_membership) j["non_membership"] = to_json(*rc.non_membership, spec);
  if (rc.connectivity) j["connectivity"] = to_json(*rc.connectivity);
  if (std::holds_alternative<VerifiedByTags>(rc.kernel_generation)) {
    j["kernel_generation"] = "verified_by_tags";
  } else if (std::holds_alternative<VerifiedByLattice>(rc.kernel_generation)) {
    j["kernel_generation"] = "verified_by_lattice";
  } else {
    j["kernel_generation"] = "not_verified";
    j["kernel_generation_evidence"] = std::get<NotVerified>(rc.kernel_generation).evidence;
  }
  j["trail"] = rc.trail;
  return j;
}

inline json to_json(const CorpusReport& rep) {
  json probes = json::array();
  for (const auto& p : rep.probes)
    probes.push_back(json{{"name", p.name}, {"ok", p.ok}, {"detail", p.detail}});
  return json{{"entry", rep.entry},
              {"ok", rep.ok},
              {"probes", probes},
              {"tally", json{{"member", rep.member}, {"non_member", rep.non_member}, {"unknown", rep.unknown}}}};
}

/// Probe rays attached to a spec file: [{"chi": {...}, "expect": "...", "label": "..."}]
inline std::vector<ProbeRay> probe_rays_from_json(const json& j) {
  std::vector<ProbeRay> out;
  for (const auto& item : j) {
    ProbeRay p;
    p.chi = character_from_json(item.at("chi"));
    if (item.contains("expect")) p.expect = item.at("expect").get<std::string>();
    if (item.contains("label")) p.label = item.at("label").get<std::string>();
    out.push_back(std::move(p));
  }
  return out;
}

inline json to_json(const std::vector<ProbeRay>& probes) {
  json a = json::array();
  for (const auto& p : probes) {
    json item{{"chi", to_json(p.chi)}};
    if (!p.expect.empty()) item["expect"] = p.expect;
    if (!p.label.empty()) item["label"] = p.label;
    a.push_back(item);
  }
  return a;
}

}  // namespace plsigma
