#include "earreg_harness/report.hpp"

#include <cstdio>

#include "earreg/io.hpp"

namespace earreg::harness {

json graph_summary(const Graph& g) {
  return {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"hash", hex(graph_hash(g))}};
}

json to_json(const EarDecomposition& d) {
  json ears = json::array();
  for (std::size_t i = 1; i <= d.ear_count(); ++i) {
    const Ear& ear = d.ear(i);
    json e = {{"index", i}, {"path", ear.path}, {"kind", to_string(ear.kind)}, {"length", ear.length()}};
    if (auto host = d.nest_host(i)) {
      e["host"] = *host;
      e["interval"] = d.stored_interval(i);
    }
    ears.push_back(std::move(e));
  }
  return {{"base", d.base()}, {"ears", std::move(ears)}, {"epsilon", epsilon(d)}};
}

json to_json(const ValidationReport& report) {
  auto list = [](const std::vector<Violation>& vs) {
    json out = json::array();
    for (const Violation& v : vs) {
      out.push_back({{"path", v.path}, {"rule", to_string(v.rule)}, {"message", v.message}});
    }
    return out;
  };
  return {{"valid", report.valid},
          {"class", to_string(report.classification)},
          {"open", report.open},
          {"weak_nested", report.weak_nested()},
          {"violations", list(report.violations)},
          {"notes", list(report.notes)}};
}

json field_json(const FieldOrder& q) { return {{"q", q.q()}, {"prime_power", q.prime_power()}}; }

namespace {

json form_json(const std::optional<LinearForm>& f) { return f ? json(f->to_string()) : json(nullptr); }

}  // namespace

json to_json(const RegularityResult& r, const FieldOrder& q) {
  json trace = json::array();
  for (const DerivationStep& s : r.trace) {
    trace.push_back({{"rule", s.rule}, {"detail", s.detail}, {"contribution", s.contribution}});
  }
  json out = {{"field", field_json(q)},
              {"kind", r.exact() ? "exact" : "interval"},
              {"determined", r.determined()},
              {"lower", r.lower},
              {"upper", r.upper ? json(*r.upper) : json(nullptr)},
              {"lower_form", form_json(r.lower_form)},
              {"upper_form", form_json(r.upper_form)},
              {"trace", std::move(trace)}};
  if (r.determined()) {
    out["value"] = r.lower;
  }
  return out;
}

json to_json(const HilbertProfile& p, const Graph& g, const FieldOrder& q, bool with_timing) {
  json out = {{"field", field_json(q)},
              {"vertices", g.vertex_count()},
              {"edges", g.edge_count()},
              {"hf", p.hf},
              {"truncated", p.truncated}};
  if (p.truncated) {
    out["reason"] = p.reason;
  } else {
    out["regularity"] = p.regularity;
    out["deg_x"] = p.deg_x;
  }
  if (with_timing) {
    out["wall_seconds"] = p.wall_seconds;
  }
  return out;
}

std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace earreg::harness
