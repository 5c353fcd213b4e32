#include "adic/session.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "adic/error.hpp"
#include "adic/matlis.hpp"
#include "adic/nakayama.hpp"
#include "adic/random.hpp"

namespace adic {

using nlohmann::json;

json series_to_json(const TruncatedSeries& f) {
  json out = json::array();
  for (const auto& [idx, c] : f.terms()) out.push_back(json::array({f.ring().monomial(idx), c}));
  return out;
}

TruncatedSeries series_from_json(const Ring& ring, const json& j) {
  require(j.is_array(), ErrorKind::InvalidInput, "series: expected an array of [exponents, coefficient] pairs");
  TruncatedSeries out(ring);
  for (const auto& term : j) {
    require(term.is_array() && term.size() == 2 && term[0].is_array() && term[1].is_number_integer(),
            ErrorKind::InvalidInput, "series: each term is [exponents, coefficient]");
    Monomial m = term[0].get<Monomial>();
    require(static_cast<int>(m.size()) == ring.vars(), ErrorKind::InvalidInput,
            "series: exponent vector of length " + std::to_string(m.size()) + ", expected " +
                std::to_string(ring.vars()));
    for (int e : m) require(e >= 0, ErrorKind::InvalidInput, "series: negative exponent");
    // terms beyond the precision are not representable
    if (monomial_degree(m) > ring.precision()) continue;
    out = out + TruncatedSeries::monomial(ring, m, term[1].get<int64_t>());
  }
  return out;
}

json matrix_to_json(const SeriesMatrix& m) {
  json rows = json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(series_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

SeriesMatrix matrix_from_json(const Ring& ring, const json& j, size_t rows, size_t cols) {
  require(j.is_array() && j.size() == rows, ErrorKind::InvalidInput,
          "matrix: expected " + std::to_string(rows) + " rows");
  SeriesMatrix out(ring, rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    require(j[r].is_array() && j[r].size() == cols, ErrorKind::InvalidInput,
            "matrix: row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
    for (size_t c = 0; c < cols; ++c) out(r, c) = series_from_json(ring, j[r][c]);
  }
  return out;
}

json presentation_to_json(const FgPresentation& m) {
  return {{"rank", m.rank}, {"relations", matrix_to_json(m.relations)}};
}

FgPresentation presentation_from_json(const Ring& ring, const json& j) {
  require(j.is_object() && j.contains("rank") && j["rank"].is_number_unsigned(), ErrorKind::InvalidInput,
          "presentation: needs a nonnegative \"rank\"");
  const size_t r = j["rank"].get<size_t>();
  if (!j.contains("relations")) return FgPresentation::free(ring, r);
  const json& rel = j["relations"];
  require(rel.is_array() && rel.size() == r, ErrorKind::InvalidInput, "presentation: relations need one row per generator");
  const size_t s = r ? rel[0].size() : 0;
  return FgPresentation(matrix_from_json(ring, rel, r, s), r);
}

json complex_to_json(const FgComplex& c) {
  json terms = json::array(), diffs = json::array();
  for (const auto& t : c.terms) terms.push_back(presentation_to_json(t));
  for (const auto& d : c.diffs) diffs.push_back(matrix_to_json(d));
  return {{"lo", c.lo}, {"terms", terms}, {"diffs", diffs}};
}

FgComplex complex_from_json(const Ring& ring, const json& j) {
  require(j.is_object() && j.contains("lo") && j["lo"].is_number_integer() && j.contains("terms") &&
              j["terms"].is_array(),
          ErrorKind::InvalidInput, "complex: needs \"lo\" and \"terms\"");
  FgComplex c{ring, j["lo"].get<int>(), {}, {}};
  for (const auto& t : j["terms"]) c.terms.push_back(presentation_from_json(ring, t));
  const json diffs = j.value("diffs", json::array());
  require(c.terms.empty() ? diffs.empty() : diffs.size() + 1 == c.terms.size(), ErrorKind::InvalidInput,
          "complex: needs one differential per adjacent pair of terms");
  for (size_t i = 0; i < diffs.size(); ++i)
    c.diffs.push_back(matrix_from_json(ring, diffs[i], c.terms[i + 1].rank, c.terms[i].rank));
  c.validate();
  return c;
}

namespace {

// Variable index for a name, or -1.
int variable_named(const Ring& ring, const std::string& name) {
  static const std::string short_names = "xyzw";
  const int n = ring.vars();
  if (name.size() == 1 && n <= 4) {
    auto pos = short_names.find(name[0]);
    if (pos != std::string::npos && static_cast<int>(pos) < n) return static_cast<int>(pos);
  }
  if (name.size() >= 2 && name[0] == 'x' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
    const int i = std::stoi(name.substr(1));
    if (i >= 1 && i <= n) return i - 1;
  }
  return -1;
}

}  // namespace

TruncatedSeries parse_series(const Ring& ring, const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  require(!t.empty(), ErrorKind::InvalidInput, "series: empty text");
  TruncatedSeries out(ring);
  size_t pos = 0;
  auto bad = [&](const std::string& why) {
    fail(ErrorKind::InvalidInput, "series '" + text + "': " + why + " at offset " + std::to_string(pos));
  };
  auto read_int = [&]() {
    size_t start = pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (start == pos) bad("expected a number");
    return std::stoll(t.substr(start, pos - start));
  };
  while (pos < t.size()) {
    int64_t sign = 1;
    if (t[pos] == '+' || t[pos] == '-') {
      sign = t[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      bad("expected + or -");
    }
    int64_t coeff = 1;
    Monomial m(ring.vars(), 0);
    bool any = false;
    if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      coeff = read_int();
      any = true;
      if (pos < t.size() && t[pos] == '*') ++pos;
    }
    while (pos < t.size() && std::isalpha(static_cast<unsigned char>(t[pos]))) {
      size_t start = pos++;
      while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
      const int v = variable_named(ring, t.substr(start, pos - start));
      if (v < 0) bad("unknown variable '" + t.substr(start, pos - start) + "'");
      int e = 1;
      if (pos < t.size() && t[pos] == '^') {
        ++pos;
        e = static_cast<int>(read_int());
      }
      m[v] += e;
      any = true;
      if (pos < t.size() && t[pos] == '*') ++pos;
    }
    if (!any) bad("empty term");
    if (monomial_degree(m) <= ring.precision()) out = out + TruncatedSeries::monomial(ring, m, sign * coeff);
  }
  return out;
}

FgPresentation parse_module(const Ring& ring, const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "A") return FgPresentation::free(ring, 1);
  if (t == "A0") return FgPresentation::residue_field(ring);
  if (t.rfind("A^", 0) == 0 && t.size() > 2 && std::all_of(t.begin() + 2, t.end(), ::isdigit))
    return FgPresentation::free(ring, std::stoul(t.substr(2)));
  require(t.rfind("A/(", 0) == 0 && t.back() == ')', ErrorKind::InvalidInput,
          "module '" + text + "': expected A, A0, A^r or A/(f1,...)");
  std::vector<TruncatedSeries> rels;
  const std::string body = t.substr(3, t.size() - 4);
  size_t start = 0;
  while (start <= body.size()) {
    const size_t comma = body.find(',', start);
    const std::string piece = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    rels.push_back(parse_series(ring, piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return FgPresentation::cyclic(ring, rels);
}

std::string kind_of(const SessionObject& o) {
  static const char* names[] = {"presentation", "complex", "ind_torsion", "level_module", "level_complex"};
  return names[o.index()];
}

SessionObject random_instance(const Ring& ring, const std::string& kind, uint64_t seed, int size) {
  require(ring.precision() <= 6, ErrorKind::InvalidInput, "random_instance: N exceeds 6");
  Rng rng(seed);
  const int level = std::min(2, ring.precision());
  if (kind == "level_module") {
    require(size >= 1 && size <= 12, ErrorKind::InvalidInput, "random_instance: level_module size must be 1..12");
    return random_level_module(rng, ring, level, static_cast<size_t>(size));
  }
  if (kind == "bounded_complex") {
    require(size >= 1 && size <= 4, ErrorKind::InvalidInput, "random_instance: bounded_complex size must be 1..4 terms");
    return random_level_complex(rng, ring, level, 0, size, 4);
  }
  if (kind == "presentation") {
    require(size >= 1 && size <= 6, ErrorKind::InvalidInput, "random_instance: presentation size must be 1..6");
    return random_presentation(rng, ring, static_cast<size_t>(size), static_cast<size_t>(size), 2);
  }
  if (kind == "fg_complex") {
    require(size >= 1 && size <= 4, ErrorKind::InvalidInput, "random_instance: fg_complex degree must be 1..4");
    return random_fg_complex(rng, ring, size);
  }
  fail(ErrorKind::InvalidInput, "random_instance: unknown kind '" + kind + "'");
}

namespace {

std::string line_col(const std::string& src, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i + 1 < byte && i < src.size(); ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json dims_json(const std::map<int, size_t>& dims) {
  json out = json::object();
  for (const auto& [d, v] : dims) out[std::to_string(d)] = v;
  return out;
}

class Session {
 public:
  Session(Ring ring, uint64_t seed) : ring_(std::move(ring)), seed_(seed) {}

  void define(const std::string& name, SessionObject o) { objects_.insert_or_assign(name, std::move(o)); }

  json execute(size_t index, const json& cmd, SessionResult& res);

  // Serialized form of a named output: data for presentations and complexes, shape otherwise.
  json emitted(const std::string& name) const {
    const SessionObject& o = objects_.at(name);
    json e = {{"name", name}, {"kind", kind_of(o)}};
    if (auto p = std::get_if<FgPresentation>(&o)) e["data"] = presentation_to_json(*p);
    else if (auto c = std::get_if<FgComplex>(&o)) e["data"] = complex_to_json(*c);
    else if (auto m = std::get_if<LevelModule>(&o)) e["data"] = {{"level", m->level()}, {"dim", m->dim()}};
    else if (auto t = std::get_if<IndTorsionModule>(&o)) e["data"] = {{"budget", t->budget()}};
    else if (auto l = std::get_if<LevelComplex>(&o)) e["data"] = {{"level", l->level}, {"lo", l->lo}, {"terms", l->terms.size()}};
    return e;
  }

 private:
  const SessionObject& get(const std::string& where, const json& args) const {
    const std::string name = args.at("of").get<std::string>();
    auto it = objects_.find(name);
    require(it != objects_.end(), ErrorKind::InvalidInput, where + ": unknown object '" + name + "'");
    return it->second;
  }

  [[noreturn]] void wrong_kind(const std::string& where, const SessionObject& o, const std::string& want) const {
    fail(ErrorKind::InvalidInput, where + ": object is a " + kind_of(o) + ", expected " + want);
  }

  FgComplex as_complex(const std::string& where, const SessionObject& o) const {
    if (auto p = std::get_if<FgPresentation>(&o)) return single_presentation(*p, 0);
    if (auto c = std::get_if<FgComplex>(&o)) return *c;
    wrong_kind(where, o, "presentation or complex");
  }

  FgPresentation as_presentation(const std::string& where, const SessionObject& o) const {
    if (auto p = std::get_if<FgPresentation>(&o)) return *p;
    wrong_kind(where, o, "presentation");
  }

  IndTorsionModule as_ind(const std::string& where, const SessionObject& o, int budget) const {
    if (auto t = std::get_if<IndTorsionModule>(&o)) return *t;
    if (auto p = std::get_if<FgPresentation>(&o)) return matlis_dual_fg(*p, budget);
    if (auto m = std::get_if<LevelModule>(&o)) return ind_from_torsion_module(m->relabeled(budget), budget);
    wrong_kind(where, o, "ind_torsion, presentation or level_module");
  }

  Ring ring_;
  uint64_t seed_;
  std::map<std::string, SessionObject> objects_;
};

json Session::execute(size_t index, const json& cmd, SessionResult& res) {
  const std::string op = cmd.at("op").get<std::string>();
  const json args = cmd.value("args", json::object());
  const std::string out = cmd.value("out", std::string());
  const std::string where = "command " + std::to_string(index) + " (" + op + ")";
  const int n_top = ring_.precision();
  json r = json::object();

  if (op == "koszul") {
    KoszulComplex k = args.contains("sequence") ? [&] {
      std::vector<TruncatedSeries> seq;
      for (const auto& s : args["sequence"]) seq.push_back(series_from_json(ring_, s));
      return koszul(seq);
    }()
                                                : koszul_powers(ring_, args.value("power", 1));
    std::map<int, size_t> dims;
    bool det = true;
    for (int i = k.complex.lo; i <= k.complex.hi(); ++i) {
      TorsionCohomology tc = torsion_cohomology(k.complex, i);
      dims[i] = tc.value.h.module.dim();
      det = det && tc.determined;
    }
    r["H"] = dims_json(dims);
    r["determined"] = det;
    res.undetermined = res.undetermined || !det;
    if (!out.empty()) define(out, k.complex);
  } else if (op == "profile") {
    const SessionObject& o = get(where, args);
    if (auto lc = std::get_if<LevelComplex>(&o)) {
      r["H"] = dims_json(profile(*lc).dims);
    } else {
      FgProfile p = fg_profile(as_complex(where, o));
      r["H"] = dims_json(p.profile.dims);
      r["level"] = p.level;
      r["stable"] = p.stable;
      res.undetermined = res.undetermined || !p.stable;
    }
  } else if (op == "complete") {
    FgPresentation m = as_presentation(where, get(where, args));
    CompletedModule c = complete_fg(m);
    json dims = json::array(), tau = json::array();
    for (int k = 0; k <= n_top; ++k) {
      dims.push_back(c.tower.levels[k].dim());
      tau.push_back(check_tau_bijective(m, k).bijective);
    }
    r["dims"] = dims;
    r["tau_bijective"] = tau;
    for (const auto& b : tau) res.property_failure = res.property_failure || !b.get<bool>();
  } else if (op == "resolve") {
    FgPresentation m = as_presentation(where, get(where, args));
    Resolution rs = resolve_free_fg(m, args.value("length", ring_.vars()));
    r["ranks"] = rs.ranks();
    r["verified"] = rs.verified;
    res.property_failure = res.property_failure || !rs.verified;
    if (!out.empty()) define(out, rs.complex);
  } else if (op == "gamma") {
    IndComplex g = telescope_gamma(as_complex(where, get(where, args)), args.value("budget", 3));
    json degs = json::object();
    for (const auto& [i, sys] : g.cohomology)
      degs[std::to_string(i)] = {{"dims", sys.dims()},
                                 {"stable", g.stable.at(i)},
                                 {"stable_from", g.stable_from.at(i)},
                                 {"colimit_dim", sys.colimit_dim()}};
    r["degrees"] = degs;
  } else if (op == "ext") {
    TorsionCohomology e = ext_A0(as_complex(where, get(where, args)), args.value("degree", 0));
    r["dim"] = e.value.h.module.dim();
    r["level"] = e.value.level;
    r["determined"] = e.determined;
    res.undetermined = res.undetermined || !e.determined;
  } else if (op == "dual") {
    IndTorsionModule t = matlis_dual_fg(as_presentation(where, get(where, args)), args.value("budget", n_top));
    json dims = json::array();
    for (const auto& s : t.stages) dims.push_back(s.dim());
    r["stage_dims"] = dims;
    if (!out.empty()) define(out, t);
  } else if (op == "injective_hull") {
    IndTorsionModule t = injective_hull(ring_, args.value("budget", n_top));
    json dims = json::array();
    for (const auto& s : t.stages) dims.push_back(s.dim());
    r["stage_dims"] = dims;
    if (!out.empty()) define(out, t);
  } else if (op == "bass") {
    BassProfile b = bass_numbers(as_ind(where, get(where, args), args.value("budget", n_top)),
                                 args.value("q_max", ring_.vars()));
    json stamps = json::array(), fin = json::array();
    for (const auto& v : b.mu) {
      stamps.push_back(v.stamp());
      fin.push_back(v.finite());
    }
    r["mu"] = b.values();
    r["finite"] = fin;
    r["stamps"] = stamps;
    res.undetermined = res.undetermined || !b.all_finite();
  } else if (op == "cofinite") {
    const SessionObject& o = get(where, args);
    const int budget = args.value("budget", std::max(2, n_top / 2));
    CofinitenessReport c = (std::holds_alternative<FgPresentation>(o) || std::holds_alternative<FgComplex>(o))
                               ? is_cohomologically_cofinite(telescope_gamma(as_complex(where, o), budget))
                               : is_cohomologically_cofinite(constant_family("input", as_ind(where, o, n_top)));
    json stamps = json::array();
    for (const auto& v : c.ext.mu) stamps.push_back(v.stamp());
    r["verdict"] = to_string(c.verdict);
    r["window"] = {c.window_lo, c.window_hi};
    r["stamps"] = stamps;
    res.undetermined = res.undetermined || c.verdict == CofiniteVerdict::Undetermined;
  } else if (op == "nakayama") {
    FgComplex c = as_complex(where, get(where, args));
    NakayamaGenerators g = nakayama_generators(tower_complex(c), args.value("degree", 0));
    r["generators"] = g.generators.cols();
    r["verified"] = g.verified;
    res.property_failure = res.property_failure || !g.verified;
  } else if (op == "conservativity") {
    ConservativityEvidence e = conservativity_probe(as_complex(where, get(where, args)));
    r["sup"] = e.sup;
    r["tor_dim"] = e.tor_dim;
    r["nonzero"] = e.nonzero();
    r["determined"] = e.determined;
    res.property_failure = res.property_failure || !e.nonzero();
  } else if (op == "random") {
    require(!out.empty(), ErrorKind::InvalidInput, where + ": needs \"out\"");
    const uint64_t s = args.value("seed", case_seed(seed_, index));
    SessionObject o = random_instance(ring_, args.at("kind").get<std::string>(), s, args.value("size", 2));
    r["kind"] = kind_of(o);
    r["seed"] = s;
    if (auto p = std::get_if<FgPresentation>(&o)) r["object"] = presentation_to_json(*p);
    if (auto c = std::get_if<FgComplex>(&o)) r["object"] = complex_to_json(*c);
    if (auto m = std::get_if<LevelModule>(&o)) r["dim"] = m->dim();
    if (auto lc = std::get_if<LevelComplex>(&o)) r["H"] = dims_json(profile(*lc).dims);
    define(out, std::move(o));
  } else {
    fail(ErrorKind::InvalidInput, where + ": unknown op");
  }
  return r;
}

const std::set<std::string>& ops_with_input() {
  static const std::set<std::string> s = {"profile", "complete", "resolve", "gamma",    "ext",
                                          "dual",    "bass",     "cofinite", "nakayama", "conservativity"};
  return s;
}

}  // namespace

SessionResult run_session_text(const std::string& source, uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, "session: parse error at " + line_col(source, e.byte) + ": " + e.what());
  }
  require(doc.is_object(), ErrorKind::InvalidInput, "session: top level must be an object");
  require(doc.value("version", 1) == 1, ErrorKind::InvalidInput, "session: unsupported version");
  require(doc.contains("ring") && doc["ring"].is_object(), ErrorKind::InvalidInput, "session: missing \"ring\"");

  SessionResult res;
  try {
    const json& rj = doc["ring"];
    res.ring = RingConfig{rj.at("p").get<uint32_t>(), rj.at("n").get<int>(), rj.at("N").get<int>()};
    Ring ring(res.ring);
    Session session(ring, seed);

    // names: unique, and referenced only after definition
    std::set<std::string> defined;
    const json objects = doc.value("objects", json::array());
    const json commands = doc.value("commands", json::array());
    for (const auto& o : objects) {
      const std::string name = o.at("name").get<std::string>();
      require(defined.insert(name).second, ErrorKind::InvalidInput, "session: duplicate object name '" + name + "'");
    }
    for (size_t i = 0; i < commands.size(); ++i) {
      const json& c = commands[i];
      const std::string op = c.at("op").get<std::string>();
      const json args = c.value("args", json::object());
      if (ops_with_input().count(op)) {
        require(args.contains("of"), ErrorKind::InvalidInput,
                "command " + std::to_string(i) + " (" + op + "): missing \"of\"");
        const std::string name = args["of"].get<std::string>();
        require(defined.count(name), ErrorKind::InvalidInput,
                "command " + std::to_string(i) + " (" + op + "): undefined name '" + name + "'");
      }
      const std::string out = c.value("out", std::string());
      if (!out.empty())
        require(defined.insert(out).second, ErrorKind::InvalidInput,
                "command " + std::to_string(i) + " (" + op + "): name '" + out + "' already defined");
    }

    for (const auto& o : objects) {
      const std::string name = o["name"].get<std::string>();
      const std::string kind = o.at("kind").get<std::string>();
      const json data = o.value("data", json::object());
      try {
        if (kind == "presentation")
          session.define(name, presentation_from_json(ring, data));
        else if (kind == "complex")
          session.define(name, complex_from_json(ring, data));
        else
          fail(ErrorKind::InvalidInput, "unknown kind '" + kind + "'");
      } catch (const Error& e) {
        fail(e.kind(), "object '" + name + "': " + e.what());
      }
    }

    json results = json::array();
    std::ostringstream text;
    for (size_t i = 0; i < commands.size(); ++i) {
      json r = session.execute(i, commands[i], res);
      json entry = {{"op", commands[i]["op"]}, {"result", r}};
      if (commands[i].contains("out")) {
        entry["out"] = commands[i]["out"];
        entry["emitted"] = session.emitted(commands[i]["out"].get<std::string>());
      }
      text << "[" << i << "] " << commands[i]["op"].get<std::string>();
      if (commands[i].contains("out")) text << " -> " << commands[i]["out"].get<std::string>();
      text << ": " << r.dump() << "\n";
      results.push_back(entry);
    }
    res.sidecar = {{"version", 1},
                   {"ring", {{"p", res.ring.p}, {"n", res.ring.n}, {"N", res.ring.N}}},
                   {"seed", seed},
                   {"results", results},
                   {"undetermined", res.undetermined},
                   {"property_failure", res.property_failure}};
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.text = "# session wall " + std::to_string(static_cast<long>(wall * 1000)) + " ms\n" + "ring p=" +
               std::to_string(res.ring.p) + " n=" + std::to_string(res.ring.n) + " N=" + std::to_string(res.ring.N) +
               ", " + std::to_string(commands.size()) + " commands\n" + text.str();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("session: schema error: ") + e.what());
  }
  return res;
}

SessionResult run_session(const std::string& path, uint64_t seed) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidInput, "session: cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return run_session_text(buf.str(), seed);
}

}  // namespace adic
