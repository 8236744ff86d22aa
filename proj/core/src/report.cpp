#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qks/workbench.hpp"

namespace qks {

namespace {

using Json = nlohmann::ordered_json;

std::string cyc(const Cyclotomic& c, long conductor) { return c.to_string(conductor); }

Json params_json(const CaseParams& p, std::optional<Localization> loc) {
  Json j;
  if (p.n) j["n"] = p.n;
  if (p.k) j["k"] = p.k;
  if (p.q) j["q"] = rational_to_string(*p.q);
  if (loc) j["localization"] = to_string(*loc);
  if (j.is_null()) j = Json::object();
  return j;
}

Json values_json(const std::vector<std::string>& names, const Values& v, long conductor) {
  Json j = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i) j[names.at(i)] = cyc(v[i], conductor);
  return j;
}

Json optional_int(const std::optional<int>& x) { return x ? Json(*x) : Json(nullptr); }

void certificate_json(Json& j, const MatrixCertificate& c) {
  j["certificate"] = c.to_string();
  if (c.central_simple) j["d"] = c.d;
  else j["witness"] = c.witness;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string values_text(const std::vector<std::string>& names, const Values& v, long conductor) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + names.at(i) + "=" + cyc(v[i], conductor);
  return s;
}

std::string header(const std::string& command, const std::string& label) { return "qks " + command + "  " + label + "\n"; }

std::string field(const std::string& key, const std::string& value) {
  std::ostringstream os;
  os << "  " << std::left << std::setw(12) << key << value << "\n";
  return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "human") return Format::human;
  if (s == "json") return Format::json;
  throw usage_error("unknown format '" + s + "' (human, json)");
}

std::string render(const ScanReport& r, Format f) {
  if (f == Format::json) {
    Json j;
    j["command"] = "scan";
    j["case"] = r.params.id;
    j["params"] = params_json(r.params, r.localization);
    j["label"] = r.label;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["conductor"] = r.conductor;
    Json pts = Json::array();
    for (const auto& p : r.points) {
      Json pj;
      pj["index"] = p.index;
      pj["origin"] = p.origin;
      pj["values"] = values_json(r.value_names, p.values, r.conductor);
      pj["fiber_dim"] = p.fiber_dim;
      certificate_json(pj, p.certificate);
      pts.push_back(std::move(pj));
    }
    j["points"] = std::move(pts);
    j["verdict"] = r.verdict;
    j["expected_d"] = optional_int(r.expected_d);
    j["pass"] = r.pass;
    return dump(j);
  }
  std::ostringstream os;
  os << header("scan", r.label) << field("seed", std::to_string(r.seed))
     << field("conductor", std::to_string(r.conductor)) << field("samples", std::to_string(r.samples));
  if (!r.points.empty()) {
    os << "\n  " << std::left << std::setw(6) << "point" << std::setw(8) << "origin" << std::setw(7) << "dim"
       << std::setw(44) << "certificate" << "values\n";
    for (const auto& p : r.points) {
      os << "  " << std::left << std::setw(6) << p.index << std::setw(8) << p.origin << std::setw(7) << p.fiber_dim
         << std::setw(44) << p.certificate.to_string() << values_text(r.value_names, p.values, r.conductor) << "\n";
    }
    os << "\n";
  }
  os << field("verdict", r.verdict)
     << field("expected_d", r.expected_d ? std::to_string(*r.expected_d) : "none") << field("pass", yes_no(r.pass));
  return os.str();
}

std::string render(const FreenessReport& r, Format f) {
  if (f == Format::json) {
    Json j;
    j["command"] = "freeness";
    j["case"] = r.params.id;
    j["params"] = params_json(r.params, r.localization);
    j["label"] = r.label;
    j["seed"] = r.seed;
    j["conductor"] = r.conductor;
    Json pts = Json::array();
    for (const auto& p : r.points) {
      Json pj;
      pj["index"] = p.index;
      pj["origin"] = p.origin;
      pj["values"] = values_json(r.coordinate_names, p.base, r.conductor);
      pj["stabilizer"] = p.stabilizer;
      if (p.certificate) {
        pj["fiber_dim"] = *p.fiber_dim;
        certificate_json(pj, *p.certificate);
      } else {
        pj["fiber_dim"] = nullptr;
        pj["certificate"] = nullptr;
        pj["lift_problem"] = p.lift_problem;
      }
      pts.push_back(std::move(pj));
    }
    j["points"] = std::move(pts);
    j["verdict"] = r.verdict;
    if (!r.witness.empty()) j["witness"] = r.witness;
    j["azumaya_agreement"] = r.azumaya_agreement;
    j["expected_d"] = optional_int(r.expected_d);
    j["pass"] = r.pass;
    return dump(j);
  }
  std::ostringstream os;
  os << header("freeness", r.label) << field("seed", std::to_string(r.seed))
     << field("conductor", std::to_string(r.conductor));
  os << "\n  " << std::left << std::setw(6) << "point" << std::setw(8) << "origin" << std::setw(16) << "stabilizer"
     << std::setw(44) << "fiber" << "values\n";
  for (const auto& p : r.points) {
    std::string stab;
    for (const auto& s : p.stabilizer) stab += (stab.empty() ? "" : ",") + s;
    std::string fib = p.certificate ? std::to_string(*p.fiber_dim) + " " + p.certificate->to_string() : "-";
    os << "  " << std::left << std::setw(6) << p.index << std::setw(8) << p.origin << std::setw(16) << stab
       << std::setw(44) << fib << values_text(r.coordinate_names, p.base, r.conductor) << "\n";
  }
  os << "\n" << field("verdict", r.verdict);
  if (!r.witness.empty()) os << field("witness", r.witness);
  os << field("agreement", yes_no(r.azumaya_agreement)) << field("pass", yes_no(r.pass));
  return os.str();
}

std::string render(const AuslanderReport& r, Format f) {
  if (f == Format::json) {
    Json j;
    j["command"] = "auslander";
    j["case"] = r.params.id;
    j["params"] = params_json(r.params, Localization::none);
    j["label"] = r.label;
    j["degree"] = r.degree;
    j["guard"] = r.guard;
    j["projection_degree"] = r.projection_degree;
    Json rows = Json::array();
    for (const auto& d : r.degrees) {
      Json dj;
      dj["degree"] = d.degree;
      dj["skew_dim"] = d.skew_dim;
      dj["hom_dim"] = d.stable ? Json(d.hom_dim_next_guard) : Json(nullptr);
      dj["hom_dim_guard"] = d.hom_dim_guard;
      dj["hom_dim_next_guard"] = d.hom_dim_next_guard;
      dj["stable"] = d.stable;
      dj["injective"] = d.injective;
      dj["agree"] = d.agree;
      rows.push_back(std::move(dj));
    }
    j["degrees"] = std::move(rows);
    j["verdict"] = r.verdict;
    j["pass"] = r.pass;
    return dump(j);
  }
  std::ostringstream os;
  os << header("auslander", r.label) << field("guard", std::to_string(r.guard) + ", " + std::to_string(r.guard + 2))
     << field("projection", "source degrees <= " + std::to_string(r.projection_degree));
  os << "\n  " << std::left << std::setw(8) << "degree" << std::setw(10) << "dim A#G" << std::setw(10) << "Hom"
     << std::setw(10) << "Hom+2" << std::setw(10) << "stable" << std::setw(11) << "injective" << "agree\n";
  for (const auto& d : r.degrees) {
    os << "  " << std::left << std::setw(8) << d.degree << std::setw(10) << d.skew_dim << std::setw(10)
       << d.hom_dim_guard << std::setw(10) << d.hom_dim_next_guard << std::setw(10) << yes_no(d.stable)
       << std::setw(11) << yes_no(d.injective) << (d.stable ? yes_no(d.agree) : "inconclusive") << "\n";
  }
  os << "\n" << field("verdict", r.verdict) << field("pass", yes_no(r.pass));
  return os.str();
}

std::string render(const SeriesReport& r, Format f) {
  std::vector<std::string> expansion;
  for (const auto& x : r.expansion) expansion.push_back(x.to_string());
  if (f == Format::json) {
    Json j;
    j["command"] = "molien";
    j["representation"] = r.kind;
    j["m"] = r.m;
    j["degree"] = r.degree;
    j["molien"] = r.molien;
    j["closed_form"] = r.closed_form;
    j["closed_form_equal"] = r.closed_form_equal;
    j["expansion"] = expansion;
    j["counts"] = r.counts;
    j["counts_match"] = r.counts_match;
    j["pass"] = r.pass;
    return dump(j);
  }
  std::ostringstream os;
  os << header("molien", r.kind + " m=" + std::to_string(r.m)) << field("closed form", r.closed_form)
     << field("equal", yes_no(r.closed_form_equal));
  os << "\n  " << std::left << std::setw(8) << "degree" << std::setw(12) << "molien" << "invariants\n";
  for (std::size_t i = 0; i < expansion.size(); ++i) {
    os << "  " << std::left << std::setw(8) << i << std::setw(12) << expansion[i]
       << (i < r.counts.size() ? std::to_string(r.counts[i]) : "-") << "\n";
  }
  os << "\n" << field("counts", r.counts_match ? "match" : "differ") << field("pass", yes_no(r.pass));
  return os.str();
}

std::string render(const CenterReport& r, Format f) {
  if (f == Format::json) {
    Json j;
    j["command"] = r.command;
    j["case"] = r.params.id;
    j["params"] = params_json(r.params, std::nullopt);
    j["label"] = r.label;
    j["conductor"] = r.conductor;
    j["degree"] = r.degree;
    Json pieces = Json::array();
    for (const auto& p : r.pieces) {
      Json pj;
      pj["degree"] = p.degree;
      pj["dim"] = p.basis.size();
      pj["basis"] = p.basis;
      pieces.push_back(std::move(pj));
    }
    j["pieces"] = std::move(pieces);
    if (!r.generators.empty()) {
      j["generators"] = r.generators;
      j["relations"] = r.relations;
    }
    if (r.generating_set) {
      Json g;
      g["ok"] = r.generating_set->ok;
      g["spans_checked"] = r.generating_set->spans_checked;
      if (!r.generating_set->failure.empty()) g["failure"] = r.generating_set->failure;
      Json rows = Json::array();
      for (const auto& d : r.generating_set->degrees) {
        rows.push_back(Json{{"degree", d.degree}, {"claimed", d.claimed}, {"computed", d.computed}});
      }
      g["degrees"] = std::move(rows);
      j["generating_set"] = std::move(g);
    }
    j["pass"] = r.pass;
    return dump(j);
  }
  std::ostringstream os;
  os << header(r.command, r.label) << field("conductor", std::to_string(r.conductor));
  os << "\n  " << std::left << std::setw(8) << "degree" << std::setw(6) << "dim" << "basis\n";
  for (const auto& p : r.pieces) {
    std::string basis;
    for (const auto& b : p.basis) basis += (basis.empty() ? "" : "; ") + b;
    os << "  " << std::left << std::setw(8) << p.degree << std::setw(6) << p.basis.size() << basis << "\n";
  }
  if (!r.generators.empty()) {
    os << "\n";
    for (const auto& g : r.generators) os << field("generator", g);
    for (const auto& rel : r.relations) os << field("relation", rel);
  }
  if (r.generating_set) {
    os << field("generates", yes_no(r.generating_set->ok) + (r.generating_set->failure.empty()
                                                                 ? ""
                                                                 : " (" + r.generating_set->failure + ")"));
  }
  return os.str();
}

std::string render(const FiberReport& r, Format f) {
  if (f == Format::json) {
    Json j;
    j["command"] = "fiber";
    j["case"] = r.params.id;
    j["params"] = params_json(r.params, std::nullopt);
    j["label"] = r.label;
    j["conductor"] = r.conductor;
    j["values"] = values_json(r.value_names, r.values, r.conductor);
    j["fiber_dim"] = r.fiber_dim;
    certificate_json(j, r.certificate);
    j["trace_rank"] = r.certificate.trace_rank;
    j["radical_dim"] = r.radical_dim;
    j["semisimple_dim"] = r.semisimple_dim;
    j["semisimple_center_dim"] = r.semisimple_center_dim;
    return dump(j);
  }
  std::ostringstream os;
  os << header("fiber", r.label) << field("point", values_text(r.value_names, r.values, r.conductor))
     << field("dim", std::to_string(r.fiber_dim)) << field("certificate", r.certificate.to_string())
     << field("trace rank", std::to_string(r.certificate.trace_rank))
     << field("radical", std::to_string(r.radical_dim))
     << field("semisimple", "dim " + std::to_string(r.semisimple_dim) + ", center dim " +
                                std::to_string(r.semisimple_center_dim));
  return os.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace qks
