#include "robsynth/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace robsynth {

using Json = nlohmann::ordered_json;

DocumentError::DocumentError(std::string kind, std::vector<DocumentIssue> issues)
    : std::runtime_error([&] {
        std::string msg = kind + " error";
        if (!issues.empty()) msg += " at " + issues.front().location + ": " + issues.front().message;
        if (issues.size() > 1) msg += " (+" + std::to_string(issues.size() - 1) + " more)";
        return msg;
      }()),
      kind_(std::move(kind)),
      issues_(std::move(issues)) {}

namespace {

/// Collects schema issues while walking a document.
class Reader {
public:
  void issue(const std::string& where, const std::string& msg) { issues_.push_back({where.empty() ? "/" : where, msg}); }
  bool ok() const { return issues_.empty(); }
  void raise(const std::string& kind = "schema") {
    if (!issues_.empty()) throw DocumentError(kind, issues_);
  }

  const Json* field(const Json& obj, const std::string& where, const std::string& key, bool required = true) {
    if (!obj.is_object()) {
      issue(where, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) issue(where, "missing field '" + key + "'");
      return nullptr;
    }
    return &*it;
  }

  void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) return;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
        issue(where + "/" + it.key(), "unknown field");
      }
    }
  }

  std::optional<std::string> string(const Json* v, const std::string& where) {
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      issue(where, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<ExtNonNeg> number(const Json* v, const std::string& where) {
    if (!v) return std::nullopt;
    try {
      if (v->is_string()) return parse_ext(v->get<std::string>());
      if (v->is_number_integer()) {
        const long long x = v->get<long long>();
        if (x >= 0) return ExtNonNeg(x);
      }
    } catch (const std::exception& e) {
      issue(where, e.what());
      return std::nullopt;
    }
    issue(where, "expected a non-negative decimal string");
    return std::nullopt;
  }

  const std::vector<DocumentIssue>& issues() const { return issues_; }

private:
  std::vector<DocumentIssue> issues_;
};

std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw DocumentError("syntax", {{"line " + std::to_string(line) + ", column " + std::to_string(col), e.what()}});
  }
}

/// Two-space indent, arrays of scalars kept on one line.
void write_json(std::string& out, const Json& j, std::size_t indent) {
  const std::string pad(indent + 2, ' ');
  auto flat_array = [](const Json& a) {
    return a.is_array() && std::all_of(a.begin(), a.end(), [](const Json& e) { return e.is_primitive(); });
  };
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    // Small records of scalars stay on one line.
    if (std::all_of(j.begin(), j.end(), [&](const Json& v) { return v.is_primitive() || flat_array(v); })) {
      std::string line = "{";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        line += (i ? ", " : "") + Json(it.key()).dump() + ": ";
        write_json(line, it.value(), indent + 2);
      }
      line += "}";
      if (line.size() + indent <= 100) {
        out += line;
        return;
      }
    }
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + Json(it.key()).dump() + ": ";
      write_json(out, it.value(), indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  } else if (j.is_array()) {
    if (flat_array(j)) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      write_json(out, j[i], indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else {
    out += j.dump();
  }
}

std::string dump(const Json& j) {
  std::string out;
  write_json(out, j, 0);
  return out + "\n";
}

std::string ext_text(const ExtNonNeg& v) { return to_string(v); }

Json state_names(const MetricAutomaton& a, const StateSet& s) {
  Json out = Json::array();
  for (StateId q : s) out.push_back(a.state_name(q));
  return out;
}

std::optional<AcceptanceKind> acceptance_kind(const std::string& s) {
  for (AcceptanceKind k : {AcceptanceKind::Reachability, AcceptanceKind::Buchi, AcceptanceKind::GeneralizedBuchi,
                           AcceptanceKind::Parity}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

const char* metric_name(MetricKind k) {
  switch (k) {
    case MetricKind::Explicit: return "explicit";
    case MetricKind::Hamming: return "hamming";
    case MetricKind::Manhattan: return "manhattan";
  }
  return "explicit";
}

/// State lookup by name within a document being read.
struct Names {
  std::map<std::string, StateId> states;
  std::map<std::string, InputId> inputs;

  std::optional<StateId> state(Reader& r, const Json* v, const std::string& where) const {
    auto s = r.string(v, where);
    if (!s) return std::nullopt;
    auto it = states.find(*s);
    if (it == states.end()) {
      r.issue(where, "unknown state '" + *s + "'");
      return std::nullopt;
    }
    return it->second;
  }
  std::optional<InputId> input(Reader& r, const Json* v, const std::string& where) const {
    auto s = r.string(v, where);
    if (!s) return std::nullopt;
    auto it = inputs.find(*s);
    if (it == inputs.end()) {
      r.issue(where, "unknown input '" + *s + "'");
      return std::nullopt;
    }
    return it->second;
  }
};

Names names_of(const MetricAutomaton& a) {
  Names n;
  for (StateId q = 0; q < a.num_states(); ++q) n.states.emplace(a.state_name(q), q);
  for (InputId i = 0; i < a.num_inputs(); ++i) n.inputs.emplace(a.input_name(i), i);
  return n;
}

std::vector<StateSet> read_sets(Reader& r, const Names& names, const Json* v, const std::string& where) {
  std::vector<StateSet> out;
  if (!v) return out;
  if (!v->is_array()) {
    r.issue(where, "expected a list of state lists");
    return out;
  }
  for (std::size_t i = 0; i < v->size(); ++i) {
    const Json& set = (*v)[i];
    StateSet s;
    if (!set.is_array()) {
      r.issue(ptr(where, i), "expected a list of state names");
    } else {
      for (std::size_t j = 0; j < set.size(); ++j) {
        if (auto q = names.state(r, &set[j], ptr(ptr(where, i), j))) s.insert(*q);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

MetricAutomaton parse_document(const std::string& text, bool validate) {
  const Json root = parse_json(text);
  Reader r;
  if (!root.is_object()) {
    r.issue("/", "document must be an object");
    r.raise();
  }
  r.only_keys(root, "", {"states", "metric", "initial", "inputs", "transitions", "gamma", "acceptance"});
  AutomatonDef def;
  Names names;

  // States.
  if (const Json* states = r.field(root, "", "states")) {
    if (!states->is_array() || states->empty()) {
      r.issue("/states", "expected a non-empty list of states");
    } else {
      for (std::size_t i = 0; i < states->size(); ++i) {
        const Json& s = (*states)[i];
        const std::string where = ptr("/states", i);
        r.only_keys(s, where, {"name", "coords"});
        State st;
        if (auto nm = r.string(r.field(s, where, "name"), where + "/name")) st.name = *nm;
        if (const Json* c = r.field(s, where, "coords", false)) {
          if (!c->is_array()) {
            r.issue(where + "/coords", "expected a list of integers");
          } else {
            for (std::size_t k = 0; k < c->size(); ++k) {
              if (!(*c)[k].is_number_integer()) {
                r.issue(ptr(where + "/coords", k), "expected an integer");
              } else {
                st.coords.push_back((*c)[k].get<long long>());
              }
            }
          }
        }
        if (!names.states.emplace(st.name, def.states.size()).second) {
          r.issue(where + "/name", "duplicate state name '" + st.name + "'");
        }
        def.states.push_back(std::move(st));
      }
    }
  }
  r.raise();

  // Inputs.
  if (const Json* inputs = r.field(root, "", "inputs")) {
    if (!inputs->is_array()) {
      r.issue("/inputs", "expected a list of input names");
    } else {
      for (std::size_t i = 0; i < inputs->size(); ++i) {
        if (auto nm = r.string(&(*inputs)[i], ptr("/inputs", i))) {
          if (!names.inputs.emplace(*nm, def.inputs.size()).second) {
            r.issue(ptr("/inputs", i), "duplicate input '" + *nm + "'");
          }
          def.inputs.push_back(*nm);
        }
      }
    }
  }

  // Metric.
  if (const Json* metric = r.field(root, "", "metric")) {
    r.only_keys(*metric, "/metric", {"kind", "matrix"});
    const auto kind = r.string(r.field(*metric, "/metric", "kind"), "/metric/kind");
    if (kind == "explicit") {
      def.metric = MetricKind::Explicit;
      const Json* m = r.field(*metric, "/metric", "matrix");
      if (m && (!m->is_array() || m->size() != def.states.size())) {
        r.issue("/metric/matrix", "expected one row per state");
      } else if (m) {
        for (std::size_t i = 0; i < m->size(); ++i) {
          const Json& row = (*m)[i];
          std::vector<ExtNonNeg> vals;
          if (!row.is_array() || row.size() != def.states.size()) {
            r.issue(ptr("/metric/matrix", i), "expected one entry per state");
          } else {
            for (std::size_t j = 0; j < row.size(); ++j) {
              vals.push_back(r.number(&row[j], ptr(ptr("/metric/matrix", i), j)).value_or(ExtNonNeg(0)));
            }
          }
          def.matrix.push_back(std::move(vals));
        }
      }
    } else if (kind == "hamming" || kind == "manhattan") {
      def.metric = *kind == "hamming" ? MetricKind::Hamming : MetricKind::Manhattan;
      if (metric->contains("matrix")) r.issue("/metric/matrix", "coordinate metrics take no matrix");
    } else if (kind) {
      r.issue("/metric/kind", "expected explicit, hamming or manhattan");
    }
  }

  if (auto q = names.state(r, r.field(root, "", "initial"), "/initial")) def.initial = *q;

  // Transitions.
  if (const Json* ts = r.field(root, "", "transitions")) {
    if (!ts->is_array()) {
      r.issue("/transitions", "expected a list of transitions");
    } else {
      for (std::size_t i = 0; i < ts->size(); ++i) {
        const Json& t = (*ts)[i];
        const std::string where = ptr("/transitions", i);
        r.only_keys(t, where, {"from", "input", "nominal", "disturbed"});
        Transition tr;
        const auto from = names.state(r, r.field(t, where, "from"), where + "/from");
        const auto in = names.input(r, r.field(t, where, "input"), where + "/input");
        const auto nom = names.state(r, r.field(t, where, "nominal"), where + "/nominal");
        if (const Json* d = r.field(t, where, "disturbed", false)) {
          if (!d->is_array()) {
            r.issue(where + "/disturbed", "expected a list of state names");
          } else {
            std::vector<StateId> ds;
            for (std::size_t k = 0; k < d->size(); ++k) {
              if (auto q = names.state(r, &(*d)[k], ptr(where + "/disturbed", k))) ds.push_back(*q);
            }
            tr.disturbed = std::move(ds);
          }
        }
        if (from && in && nom) {
          tr.from = *from;
          tr.input = *in;
          tr.nominal = *nom;
          def.transitions.push_back(std::move(tr));
        }
      }
    }
  }

  // Disturbance bound.
  if (const Json* g = r.field(root, "", "gamma")) {
    r.only_keys(*g, "/gamma", {"constant", "per_state"});
    if (g->is_object() && g->contains("constant") == g->contains("per_state")) {
      r.issue("/gamma", "expected exactly one of 'constant' or 'per_state'");
    } else if (const Json* c = r.field(*g, "/gamma", "constant", false)) {
      if (auto v = r.number(c, "/gamma/constant")) {
        if (v->is_infinite()) {
          r.issue("/gamma/constant", "gamma must be finite");
        } else {
          def.gamma = DisturbanceBound::uniform(v->value());
        }
      }
    } else if (const Json* ps = r.field(*g, "/gamma", "per_state", false)) {
      std::vector<Rational> vals(def.states.size(), Rational(0));
      std::vector<bool> set(def.states.size(), false);
      if (!ps->is_object()) {
        r.issue("/gamma/per_state", "expected an object keyed by state name");
      } else {
        for (auto it = ps->begin(); it != ps->end(); ++it) {
          const std::string where = "/gamma/per_state/" + it.key();
          auto q = names.states.find(it.key());
          if (q == names.states.end()) {
            r.issue(where, "unknown state '" + it.key() + "'");
            continue;
          }
          if (auto v = r.number(&it.value(), where)) {
            if (v->is_infinite()) {
              r.issue(where, "gamma must be finite");
            } else {
              vals[q->second] = v->value();
              set[q->second] = true;
            }
          }
        }
        for (StateId q = 0; q < def.states.size(); ++q) {
          if (!set[q]) r.issue("/gamma/per_state", "no entry for state '" + def.states[q].name + "'");
        }
      }
      def.gamma = DisturbanceBound::by_state(std::move(vals));
    }
  }

  // Acceptance.
  if (const Json* acc = r.field(root, "", "acceptance")) {
    r.only_keys(*acc, "/acceptance", {"kind", "sets"});
    const auto kind_text = r.string(r.field(*acc, "/acceptance", "kind"), "/acceptance/kind");
    const auto kind = kind_text ? acceptance_kind(*kind_text) : std::nullopt;
    if (kind_text && !kind) r.issue("/acceptance/kind", "expected reachability, buchi, generalized-buchi or parity");
    auto sets = read_sets(r, names, r.field(*acc, "/acceptance", "sets"), "/acceptance/sets");
    if (kind) {
      const AcceptanceKind k = kind.value();
      if ((k == AcceptanceKind::Reachability || k == AcceptanceKind::Buchi) && sets.size() != 1) {
        r.issue("/acceptance/sets", "expected exactly one set");
      } else if (sets.empty()) {
        r.issue("/acceptance/sets", "expected at least one set");
      }
      def.acceptance = {k, std::move(sets)};
    }
  }
  r.raise();

  std::optional<MetricAutomaton> a;
  try {
    a.emplace(std::move(def));
  } catch (const ModelError& e) {
    throw DocumentError("schema", {{"/", e.what()}});
  }
  if (validate) {
    const ValidationReport rep = validate_automaton(*a);
    if (!rep.ok()) {
      std::vector<DocumentIssue> issues;
      for (const auto& v : rep.violations) {
        if (!v.warning) issues.push_back({v.kind, v.message});
      }
      throw DocumentError("validation", std::move(issues));
    }
  }
  return std::move(*a);
}

std::string serialize_document(const MetricAutomaton& a) {
  const AutomatonDef& def = a.definition();
  Json root;
  Json states = Json::array();
  for (const auto& s : def.states) {
    Json js;
    js["name"] = s.name;
    if (def.metric != MetricKind::Explicit) js["coords"] = s.coords;
    states.push_back(std::move(js));
  }
  root["states"] = std::move(states);
  Json metric;
  metric["kind"] = metric_name(def.metric);
  if (def.metric == MetricKind::Explicit) {
    Json rows = Json::array();
    for (const auto& row : def.matrix) {
      Json jr = Json::array();
      for (const auto& v : row) jr.push_back(ext_text(v));
      rows.push_back(std::move(jr));
    }
    metric["matrix"] = std::move(rows);
  }
  root["metric"] = std::move(metric);
  root["initial"] = a.state_name(def.initial);
  root["inputs"] = def.inputs;
  Json ts = Json::array();
  for (const auto& t : def.transitions) {
    Json jt;
    jt["from"] = a.state_name(t.from);
    jt["input"] = a.input_name(t.input);
    jt["nominal"] = a.state_name(t.nominal);
    if (t.disturbed) {
      Json d = Json::array();
      for (StateId q : *t.disturbed) d.push_back(a.state_name(q));
      jt["disturbed"] = std::move(d);
    }
    ts.push_back(std::move(jt));
  }
  root["transitions"] = std::move(ts);
  Json g;
  if (def.gamma.constant) {
    g["constant"] = format_rational(*def.gamma.constant);
  } else {
    Json ps = Json::object();
    for (StateId q = 0; q < def.states.size(); ++q) ps[def.states[q].name] = format_rational(def.gamma.per_state[q]);
    g["per_state"] = std::move(ps);
  }
  root["gamma"] = std::move(g);
  Json acc;
  acc["kind"] = to_string(def.acceptance.kind);
  Json sets = Json::array();
  for (const auto& s : def.acceptance.sets) sets.push_back(state_names(a, s));
  acc["sets"] = std::move(sets);
  root["acceptance"] = std::move(acc);
  return dump(root);
}

namespace {

std::vector<InputSet> read_choice_map(Reader& r, const MetricAutomaton& a, const Names& names, const Json& m,
                                      const std::string& where) {
  std::vector<InputSet> col(a.num_states());
  if (!m.is_object()) {
    r.issue(where, "expected an object keyed by state name");
    return col;
  }
  for (auto it = m.begin(); it != m.end(); ++it) {
    const std::string w = where + "/" + it.key();
    auto q = names.states.find(it.key());
    if (q == names.states.end()) {
      r.issue(w, "unknown state '" + it.key() + "'");
      continue;
    }
    const Json& v = it.value();
    if (v.is_string()) {
      if (auto in = names.input(r, &v, w)) col[q->second].insert(*in);
    } else if (v.is_array()) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (auto in = names.input(r, &v[k], ptr(w, k))) col[q->second].insert(*in);
      }
    } else {
      r.issue(w, "expected an input name or a list of input names");
    }
  }
  return col;
}

Json choice_map(const MetricAutomaton& a, const Strategy& s, std::size_t counter) {
  Json m = Json::object();
  for (StateId q = 0; q < a.num_states() && q < s.num_states(); ++q) {
    if (s.at(q, counter).empty()) continue;
    Json ins = Json::array();
    for (InputId in : s.at(q, counter)) ins.push_back(a.input_name(in));
    m[a.state_name(q)] = std::move(ins);
  }
  return m;
}

Json strategy_json(const MetricAutomaton& a, const Strategy& s) {
  Json j;
  j["kind"] = s.is_indexed() ? "indexed" : "memoryless";
  if (s.is_indexed()) {
    Json cols = Json::array();
    for (std::size_t k = 0; k < s.counters(); ++k) cols.push_back(choice_map(a, s, k));
    j["choices"] = std::move(cols);
  } else {
    j["choices"] = choice_map(a, s, 0);
  }
  return j;
}

Json lasso_json(const MetricAutomaton& a, const Lasso& l) {
  Json j;
  Json stem = Json::array();
  for (StateId q : l.stem) stem.push_back(a.state_name(q));
  Json loop = Json::array();
  for (StateId q : l.loop) loop.push_back(a.state_name(q));
  j["stem"] = std::move(stem);
  j["loop"] = std::move(loop);
  return j;
}

Json values_json(const MetricAutomaton& a, const std::map<StateId, std::vector<ExtNonNeg>>& values) {
  Json j = Json::object();
  for (const auto& [q, vs] : values) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(ext_text(v));
    j[a.state_name(q)] = std::move(arr);
  }
  return j;
}

Json script_json(const MetricAutomaton& a, const FaultScript& script) {
  Json j;
  Json events = Json::array();
  for (const auto& e : script.events) {
    Json je;
    je["step"] = e.step;
    je["target"] = a.state_name(e.target);
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  j["loop_start"] = script.loop_start;
  j["loop_length"] = script.loop_length;
  return j;
}

}  // namespace

Strategy parse_strategy(const MetricAutomaton& a, const std::string& text) {
  const Json root = parse_json(text);
  Reader r;
  const Names names = names_of(a);
  r.only_keys(root, "", {"kind", "choices"});
  const auto kind = r.string(r.field(root, "", "kind"), "/kind");
  const Json* choices = r.field(root, "", "choices");
  r.raise();
  if (*kind == "memoryless") {
    auto col = read_choice_map(r, a, names, *choices, "/choices");
    r.raise();
    return Strategy::memoryless(std::move(col));
  }
  if (*kind == "indexed") {
    std::vector<std::vector<InputSet>> cols;
    if (!choices->is_array() || choices->empty()) {
      r.issue("/choices", "expected a non-empty list of choice maps");
    } else {
      for (std::size_t k = 0; k < choices->size(); ++k) {
        cols.push_back(read_choice_map(r, a, names, (*choices)[k], ptr("/choices", k)));
      }
    }
    r.raise();
    return Strategy::indexed(std::move(cols));
  }
  r.issue("/kind", "expected memoryless or indexed");
  r.raise();
  return {};
}

std::string serialize_strategy(const MetricAutomaton& a, const Strategy& s) { return dump(strategy_json(a, s)); }

RankCertificate parse_certificate(const MetricAutomaton& a, const std::string& text) {
  const Json root = parse_json(text);
  Reader r;
  r.only_keys(root, "", {"objective", "f", "eta", "ranks"});
  RankCertificate cert;
  if (auto obj = r.string(r.field(root, "", "objective"), "/objective")) {
    if (auto k = acceptance_kind(*obj)) {
      cert.objective = *k;
    } else {
      r.issue("/objective", "unknown objective '" + *obj + "'");
    }
  }
  auto coeff = [&](const char* key, Rational& out) {
    if (const Json* v = r.field(root, "", key, false)) {
      if (auto x = r.number(v, std::string("/") + key)) {
        if (x->is_infinite() || x->is_zero()) {
          r.issue(std::string("/") + key, "coefficient must be positive and finite");
        } else {
          out = x->value();
        }
      }
    }
  };
  coeff("f", cert.f_coeff);
  coeff("eta", cert.eta_coeff);
  cert.ranks.assign(a.num_states(), {});
  std::vector<bool> seen(a.num_states(), false);
  if (const Json* ranks = r.field(root, "", "ranks")) {
    if (!ranks->is_object()) {
      r.issue("/ranks", "expected an object keyed by state name");
    } else {
      for (auto it = ranks->begin(); it != ranks->end(); ++it) {
        const std::string where = "/ranks/" + it.key();
        auto q = a.find_state(it.key());
        if (!q) {
          r.issue(where, "unknown state '" + it.key() + "'");
          continue;
        }
        seen[*q] = true;
        if (it.value().is_array()) {
          for (std::size_t k = 0; k < it.value().size(); ++k) {
            cert.ranks[*q].push_back(r.number(&it.value()[k], ptr(where, k)).value_or(ExtNonNeg(0)));
          }
        } else {
          cert.ranks[*q].push_back(r.number(&it.value(), where).value_or(ExtNonNeg(0)));
        }
      }
      for (StateId q = 0; q < a.num_states(); ++q) {
        if (!seen[q]) r.issue("/ranks", "no rank for state '" + a.state_name(q) + "'");
      }
    }
  }
  r.raise();
  return cert;
}

std::string serialize_certificate(const MetricAutomaton& a, const RankCertificate& cert) {
  Json j;
  j["objective"] = to_string(cert.objective);
  j["f"] = format_rational(cert.f_coeff);
  j["eta"] = format_rational(cert.eta_coeff);
  Json ranks = Json::object();
  for (StateId q = 0; q < cert.ranks.size() && q < a.num_states(); ++q) {
    Json arr = Json::array();
    for (const auto& v : cert.ranks[q]) arr.push_back(ext_text(v));
    ranks[a.state_name(q)] = std::move(arr);
  }
  j["ranks"] = std::move(ranks);
  return dump(j);
}

FaultScript parse_script(const MetricAutomaton& a, const std::string& text) {
  const Json root = parse_json(text);
  Reader r;
  const Names names = names_of(a);
  r.only_keys(root, "", {"events", "loop_start", "loop_length"});
  FaultScript script;
  if (const Json* events = r.field(root, "", "events")) {
    if (!events->is_array()) {
      r.issue("/events", "expected a list of events");
    } else {
      for (std::size_t i = 0; i < events->size(); ++i) {
        const Json& e = (*events)[i];
        const std::string where = ptr("/events", i);
        r.only_keys(e, where, {"step", "target"});
        const Json* step = r.field(e, where, "step");
        const auto target = names.state(r, r.field(e, where, "target"), where + "/target");
        if (step && !step->is_number_unsigned()) r.issue(where + "/step", "expected a non-negative integer");
        if (step && step->is_number_unsigned() && target) script.events.push_back({step->get<std::size_t>(), *target});
      }
    }
  }
  for (const char* key : {"loop_start", "loop_length"}) {
    if (const Json* v = r.field(root, "", key, false)) {
      if (!v->is_number_unsigned()) {
        r.issue(std::string("/") + key, "expected a non-negative integer");
      } else {
        (std::string(key) == "loop_start" ? script.loop_start : script.loop_length) = v->get<std::size_t>();
      }
    }
  }
  r.raise();
  std::sort(script.events.begin(), script.events.end(),
            [](const FaultEvent& x, const FaultEvent& y) { return x.step < y.step; });
  return script;
}

std::string serialize_script(const MetricAutomaton& a, const FaultScript& script) { return dump(script_json(a, script)); }

std::string report_to_json(const MetricAutomaton& a, const RobustnessReport& rep) {
  Json j;
  j["objective"] = to_string(rep.objective);
  j["sigma"] = ext_text(rep.sigma);
  j["sigma_times_gamma"] = ext_text(rep.sigma_times_gamma);
  j["gamma_bar"] = format_rational(rep.gamma_bar);
  j["exact_win"] = rep.exact_win;
  if (rep.sigma_recurrent) j["sigma_recurrent"] = ext_text(*rep.sigma_recurrent);
  if (rep.sigma_min_formula) j["sigma_min_formula"] = ext_text(*rep.sigma_min_formula);
  if (!rep.component_sigma.empty()) {
    Json cs = Json::array();
    for (const auto& v : rep.component_sigma) cs.push_back(ext_text(v));
    j["component_sigma"] = std::move(cs);
  }
  j["certified"] = rep.certified;
  if (rep.attains_optimum) j["attains_optimum"] = *rep.attains_optimum;
  Json inflated = Json::array();
  for (const auto& s : rep.inflated) inflated.push_back(state_names(a, s));
  j["inflated"] = std::move(inflated);
  if (rep.strategy) j["strategy"] = strategy_json(a, *rep.strategy);
  j["values"] = values_json(a, rep.values);
  j["iterations"] = rep.iterations;
  j["analysed_states"] = rep.analysed_states;
  j["notes"] = rep.notes;
  return dump(j);
}

std::string validation_to_json(const MetricAutomaton& a, const ValidationReport& structural,
                               const ValidationReport& coreach) {
  auto list = [&](const ValidationReport& rep) {
    Json arr = Json::array();
    for (const auto& v : rep.violations) {
      Json jv;
      jv["kind"] = v.kind;
      jv["message"] = v.message;
      jv["warning"] = v.warning;
      Json w = Json::array();
      for (StateId q : v.witness) w.push_back(a.state_name(q));
      jv["witness"] = std::move(w);
      arr.push_back(std::move(jv));
    }
    return arr;
  };
  Json j;
  j["ok"] = structural.ok();
  j["states"] = a.num_states();
  j["inputs"] = a.num_inputs();
  j["gamma_bar"] = format_rational(a.gamma_bar());
  j["violations"] = list(structural);
  j["coreachable"] = coreach.ok();
  j["coreachability"] = list(coreach);
  return dump(j);
}

std::string certificate_check_to_json(const MetricAutomaton& a, const CertificateCheck& chk,
                                      const std::optional<SigmaBound>& bound) {
  Json j;
  j["valid"] = chk.ok();
  Json vs = Json::array();
  for (const auto& v : chk.violations) {
    Json jv;
    jv["kind"] = v.kind;
    jv["message"] = v.message;
    vs.push_back(std::move(jv));
  }
  j["violations"] = std::move(vs);
  if (bound) {
    j["lipschitz"] = ext_text(bound->lipschitz.k);
    if (bound->lipschitz.witness) {
      j["lipschitz_witness"] = {a.state_name(bound->lipschitz.witness->first),
                                a.state_name(bound->lipschitz.witness->second)};
    }
    j["sigma_bound"] = ext_text(bound->sigma);
    j["certified"] = bound->certified;
    j["notes"] = bound->notes;
  }
  return dump(j);
}

std::string fault_bound_to_json(const MetricAutomaton& a, const FaultBound& fb, const std::optional<SimOutcome>& search,
                                const std::optional<ThresholdResult>& threshold) {
  Json j;
  j["n"] = fb.n ? Json(*fb.n) : Json("inf");
  j["radius"] = ext_text(fb.radius);
  Json sets = Json::array();
  for (std::size_t k = 0; k < fb.inflated.size(); ++k) {
    Json entry;
    entry["inflated"] = state_names(a, fb.inflated[k]);
    Json lens = Json::object();
    for (const auto& [q, len] : fb.trace_lengths[k]) lens[a.state_name(q)] = len ? Json(*len) : Json("inf");
    entry["trace_lengths"] = std::move(lens);
    sets.push_back(std::move(entry));
  }
  j["targets"] = std::move(sets);
  j["pedigree"] = fb.pedigree;
  j["certified"] = fb.certified;
  j["notes"] = fb.notes;
  auto outcome = [&](const SimOutcome& o) {
    Json jo;
    jo["violation"] = o.violation;
    jo["explored"] = o.explored;
    if (o.violation) {
      jo["witness"] = lasso_json(a, o.witness);
      jo["script"] = script_json(a, o.script);
    }
    return jo;
  };
  if (search) j["search"] = outcome(*search);
  if (threshold) {
    Json jt;
    jt["threshold"] = threshold->threshold;
    if (threshold->below) jt["below"] = outcome(*threshold->below);
    j["empirical"] = std::move(jt);
  }
  return dump(j);
}

std::string run_to_json(const MetricAutomaton& a, const RunResult& run) {
  Json j;
  Json tr = Json::array();
  for (StateId q : run.trace) tr.push_back(a.state_name(q));
  j["trace"] = std::move(tr);
  Json faults = Json::array();
  for (const auto& f : run.faults) {
    Json jf;
    jf["step"] = f.step;
    jf["target"] = a.state_name(f.target);
    faults.push_back(std::move(jf));
  }
  j["faults"] = std::move(faults);
  j["deadlock"] = run.deadlock;
  if (run.lasso) j["lasso"] = lasso_json(a, *run.lasso);
  j["exact"] = run.exact;
  if (run.accepted) j["accepted"] = *run.accepted;
  return dump(j);
}

std::string lasso_to_json(const MetricAutomaton& a, const Lasso& lasso) { return dump(lasso_json(a, lasso)); }

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const MetricAutomaton& a, const std::optional<Strategy>& strategy,
                       const std::optional<std::map<StateId, std::vector<ExtNonNeg>>>& values) {
  StateSet targets;
  for (const auto& s : a.acceptance().sets) {
    if (a.acceptance().kind == AcceptanceKind::Parity) break;
    targets.insert(s.begin(), s.end());
  }
  if (a.acceptance().kind == AcceptanceKind::Parity) {
    for (std::size_t k = 0; k < a.acceptance().even_count(); ++k) {
      const auto& s = a.acceptance().even_set(k);
      targets.insert(s.begin(), s.end());
    }
  }
  auto chosen = [&](StateId q, InputId in) {
    if (!strategy) return false;
    for (std::size_t k = 0; k < strategy->counters(); ++k) {
      if (q < strategy->num_states() && strategy->at(q, k).count(in)) return true;
    }
    return false;
  };

  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n  __start [shape=point];\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    std::string label = a.state_name(q);
    if (auto c = a.colour(q)) label += "\\ncolour " + std::to_string(*c);
    if (values) {
      auto it = values->find(q);
      if (it != values->end()) {
        label += "\\n";
        for (std::size_t k = 0; k < it->second.size(); ++k) label += (k ? "," : "") + to_string(it->second[k]);
      }
    }
    out << "  " << quoted(a.state_name(q)) << " [label=" << quoted(label);
    if (targets.count(q)) out << ", shape=doublecircle";
    out << "];\n";
  }
  out << "  __start -> " << quoted(a.state_name(a.initial())) << ";\n";

  // (from, to) -> inputs, nominal and disturbance-only separately.
  std::map<std::pair<StateId, StateId>, std::vector<InputId>> nominal;
  std::map<std::pair<StateId, StateId>, std::vector<InputId>> disturbed;
  std::map<std::pair<StateId, StateId>, bool> highlighted;
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (InputId in = 0; in < a.num_inputs(); ++in) {
      if (auto t = a.nominal(q, in)) {
        nominal[{q, *t}].push_back(in);
        if (chosen(q, in)) highlighted[{q, *t}] = true;
      }
    }
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (InputId in = 0; in < a.num_inputs(); ++in) {
      for (StateId r : a.successors(q, in)) {
        if (!nominal.count({q, r})) disturbed[{q, r}].push_back(in);
      }
    }
  }
  auto labels = [&](const std::vector<InputId>& ins) {
    std::string s;
    for (std::size_t k = 0; k < ins.size(); ++k) s += (k ? "," : "") + a.input_name(ins[k]);
    return s;
  };
  for (const auto& [edge, ins] : nominal) {
    out << "  " << quoted(a.state_name(edge.first)) << " -> " << quoted(a.state_name(edge.second))
        << " [label=" << quoted(labels(ins));
    if (highlighted.count(edge)) out << ", penwidth=2.5, color=blue";
    out << "];\n";
  }
  for (const auto& [edge, ins] : disturbed) {
    out << "  " << quoted(a.state_name(edge.first)) << " -> " << quoted(a.state_name(edge.second))
        << " [label=" << quoted(labels(ins)) << ", style=dashed, color=gray50];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace robsynth
