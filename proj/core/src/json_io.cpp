#include "charpow/json_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace charpow {

namespace {

using Json = nlohmann::ordered_json;

long long to_ll(Int const &x, char const *what) {
  if (x < std::numeric_limits<long long>::min() || x > std::numeric_limits<long long>::max())
    throw cap_error(std::string(what) + ": entry exceeds 64-bit range in serialization");
  return x.convert_to<long long>();
}

Json mat_to_json(Mat const &A) {
  Json rows = Json::array();
  for (int i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < A.cols(); ++j) row.push_back(to_ll(A.at(i, j), "matrix"));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(Json const &j, char const *what) {
  if (!j.is_array() || j.empty()) throw usage_error(std::string(what) + ": want a row array");
  int rows = static_cast<int>(j.size());
  if (!j[0].is_array()) throw usage_error(std::string(what) + ": want rows of integers");
  int cols = static_cast<int>(j[0].size());
  Mat A(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[static_cast<size_t>(i)].is_array() ||
        static_cast<int>(j[static_cast<size_t>(i)].size()) != cols)
      throw usage_error(std::string(what) + ": ragged rows");
    for (int c = 0; c < cols; ++c) {
      Json const &e = j[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (!e.is_number_integer()) throw usage_error(std::string(what) + ": non-integer entry");
      A.at(i, c) = Int(e.get<long long>());
    }
  }
  return A;
}

std::string rat_to_string(Rat const &r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rat rat_from_string(std::string const &s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw usage_error("rational: zero denominator");
    return Rat(num, den);
  } catch (std::runtime_error const &) {
    throw usage_error("rational: cannot parse '" + s + "'");
  }
}

Json coeff_to_json(Context const &ctx, CoeffValue const &x) {
  VarCodec codec(ctx);
  Json terms = Json::array();
  for (auto const &[mono, c] : x.terms) {
    Json vars = Json::array();
    for (auto const &[v, e] : mono) {
      Json t;
      t["v"] = codec.decode(v);
      t["e"] = e;
      vars.push_back(std::move(t));
    }
    Json term;
    term["c"] = rat_to_string(c);
    term["m"] = std::move(vars);
    terms.push_back(std::move(term));
  }
  return terms;
}

CoeffValue coeff_from_json(Context const &ctx, Json const &j) {
  if (!j.is_array()) throw usage_error("value: want a term array");
  VarCodec codec(ctx);
  CoeffValue out = coeff_zero();
  for (auto const &term : j) {
    if (!term.is_object() || !term.contains("c") || !term.contains("m"))
      throw usage_error("value: term wants fields c and m");
    Rat c = rat_from_string(term.at("c").get<std::string>());
    CoeffValue t = coeff_const(c);
    for (auto const &var : term.at("m")) {
      std::vector<long long> v = var.at("v").get<std::vector<long long>>();
      long long e = var.at("e").get<long long>();
      if (static_cast<int>(v.size()) != ctx.n) throw usage_error("value: variable rank mismatch");
      if (e < 1) throw usage_error("value: exponents must be positive");
      CoeffValue base = coeff_var(ctx, v);
      for (long long i = 0; i < e; ++i) t = coeff_mul(t, base);
    }
    out = coeff_add(out, t);
  }
  return out;
}

Json parse_text(std::string const &text, char const *what) {
  try {
    return Json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (Json::parse_error const &e) {
    throw usage_error(std::string(what) + ": invalid JSON: " + e.what());
  }
}

Context context_from_json(Json const &j, char const *what) {
  for (char const *key : {"p", "n", "N"})
    if (!j.contains(key) || !j.at(key).is_number_integer())
      throw usage_error(std::string(what) + ": missing integer field " + key);
  return Context(j.at("p").get<long long>(), j.at("n").get<int>(), j.at("N").get<int>());
}

std::string dump_with_header(Json const &j, std::string const &command) {
  std::string out;
  if (!command.empty()) out += "// charpow " + command + "\n";
  out += j.dump(2);
  out += "\n";
  return out;
}

}  // namespace

std::string group_spec_of(FiniteGroup const &G) {
  std::ostringstream os;
  os << "perm:" << G.degree() << ":";
  bool first = true;
  std::vector<int> seen_gens;
  for (int gi : G.generators()) {
    if (std::find(seen_gens.begin(), seen_gens.end(), gi) != seen_gens.end()) continue;
    seen_gens.push_back(gi);
    if (!first) os << ";";
    first = false;
    Perm const &g = G.perm(gi);
    std::vector<char> seen(g.size(), 0);
    bool any = false;
    for (size_t s = 0; s < g.size(); ++s) {
      if (seen[s] || g[s] == s) continue;
      os << "(";
      size_t x = s;
      bool inner_first = true;
      while (!seen[x]) {
        seen[x] = 1;
        if (!inner_first) os << " ";
        inner_first = false;
        os << (x + 1);
        x = g[x];
      }
      os << ")";
      any = true;
    }
    if (!any) os << "()";
  }
  return os.str();
}

std::string section_to_json(Section const &s, std::string const &command) {
  Json j;
  j["kind"] = "section";
  j["p"] = s.ctx.p;
  j["n"] = s.ctx.n;
  j["N"] = s.ctx.N;
  j["level"] = s.level;
  Json entries = Json::array();
  for (auto const &[H, A] : s.table) {
    Json e;
    e["subgroup"] = mat_to_json(H.basis);
    e["matrix"] = mat_to_json(A.mat);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return dump_with_header(j, command);
}

Section section_from_json(std::string const &text) {
  Json j = parse_text(text, "section file");
  if (!j.is_object() || j.value("kind", "") != "section")
    throw usage_error("section file: want an object with kind=section");
  Context ctx = context_from_json(j, "section file");
  if (!j.contains("level") || !j.at("level").is_number_integer())
    throw usage_error("section file: missing integer field level");
  int level = j.at("level").get<int>();
  if (level < 0 || level > ctx.N) throw usage_error("section file: level out of range");

  Section s;
  s.ctx = ctx;
  s.level = level;
  if (!j.contains("entries") || !j.at("entries").is_array())
    throw usage_error("section file: missing entries array");
  for (auto const &e : j.at("entries")) {
    FiniteSubgroup H = subgroup_from_basis(ctx, mat_from_json(e.at("subgroup"), "section file"));
    Isogeny A = make_isogeny(ctx, mat_from_json(e.at("matrix"), "section file"));
    if (!(kernel(A) == H))
      throw usage_error("section file: matrix kernel differs from its subgroup key at " +
                        subgroup_to_string(H));
    if (!s.table.emplace(H, A).second)
      throw usage_error("section file: duplicate subgroup " + subgroup_to_string(H));
  }

  // the table must cover exactly the subgroups of Lambda^*[p^level]
  size_t expected = 0;
  for (int k = 0; k <= ctx.n * level; ++k)
    for (auto const &H : enumerate_subgroups(ctx, k))
      if (subgroup_exponent(H) <= level) {
        ++expected;
        if (!s.has(H))
          throw usage_error("section file: missing entry for " + subgroup_to_string(H));
      }
  if (s.table.size() != expected)
    throw usage_error("section file: extra entries beyond level-" + std::to_string(level) +
                      " subgroups");
  return s;
}

std::string classfn_to_json(ClassFunction const &f, std::string const &group_spec,
                            std::string const &command) {
  Json j;
  j["kind"] = "classfn";
  j["p"] = f.ctx.p;
  j["n"] = f.ctx.n;
  j["N"] = f.ctx.N;
  j["group"] = group_spec;
  if (f.domain)
    j["domain"] = mat_to_json(f.domain->basis);
  else
    j["domain"] = nullptr;
  Json classes = Json::array();
  for (size_t c = 0; c < f.vals.size(); ++c) {
    Json e;
    e["rep"] = f.cs->rep(static_cast<int>(c));
    e["defined"] = f.is_defined(static_cast<int>(c));
    e["value"] = f.is_defined(static_cast<int>(c)) ? coeff_to_json(f.ctx, f.vals[c])
                                                   : Json::array();
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);
  return dump_with_header(j, command);
}

LoadedClassFn classfn_from_json(std::string const &text) {
  Json j = parse_text(text, "classfn file");
  if (!j.is_object() || j.value("kind", "") != "classfn")
    throw usage_error("classfn file: want an object with kind=classfn");
  Context ctx = context_from_json(j, "classfn file");
  if (!j.contains("group") || !j.at("group").is_string())
    throw usage_error("classfn file: missing group spec");
  std::string spec = j.at("group").get<std::string>();
  GroupPtr G = make_group(spec);
  auto cs = std::make_shared<ClassSet>(G, ctx.p, ctx.n);

  ClassFunction f = cf_zero(ctx, cs);
  if (j.contains("domain") && !j.at("domain").is_null())
    f.domain = subgroup_from_basis(ctx, mat_from_json(j.at("domain"), "classfn file"));

  if (!j.contains("classes") || !j.at("classes").is_array())
    throw usage_error("classfn file: missing classes array");
  if (j.at("classes").size() != cs->count())
    throw usage_error("classfn file: class count mismatch (file " +
                      std::to_string(j.at("classes").size()) + ", group " +
                      std::to_string(cs->count()) + ")");
  std::vector<char> defined(cs->count(), 1);
  bool all_defined = true;
  for (size_t c = 0; c < cs->count(); ++c) {
    Json const &e = j.at("classes")[c];
    std::vector<int> rep = e.at("rep").get<std::vector<int>>();
    for (int x : rep)
      if (x < 0 || static_cast<size_t>(x) >= G->order())
        throw usage_error("classfn file: representative entry out of range");
    if (cs->class_of(rep) != static_cast<int>(c))
      throw usage_error("classfn file: representative order disagrees with the group's class set");
    bool def = e.value("defined", true);
    defined[c] = def ? 1 : 0;
    all_defined = all_defined && def;
    if (def) f.vals[c] = coeff_from_json(ctx, e.at("value"));
  }
  if (!all_defined) f.defined = std::move(defined);
  return LoadedClassFn{spec, G, std::move(f)};
}

namespace {

Json report_to_jobj(VerificationReport const &r) {
  Json j;
  j["kind"] = "report";
  j["check"] = r.check;
  Json params = Json::object();
  for (auto const &[k, v] : r.params) params[k] = v;
  j["params"] = std::move(params);
  j["pass"] = r.pass;
  Json counts = Json::object();
  for (auto const &[k, v] : r.counts) counts[k] = v;
  j["counts"] = std::move(counts);
  j["witness"] = r.witness;
  return j;
}

}  // namespace

std::string report_to_json(VerificationReport const &r, std::string const &command) {
  return dump_with_header(report_to_jobj(r), command);
}

std::string reports_to_json(std::vector<VerificationReport> const &rs,
                            std::string const &command) {
  Json arr = Json::array();
  for (auto const &r : rs) arr.push_back(report_to_jobj(r));
  return dump_with_header(arr, command);
}

std::string report_to_csv(std::vector<VerificationReport> const &rs) {
  auto cell = [](std::string s) {
    for (auto &c : s)
      if (c == ',' || c == '\n') c = ' ';
    return s;
  };
  std::ostringstream os;
  os << "check,params,pass,counts,witness\n";
  for (auto const &r : rs) {
    std::string params, counts;
    for (auto const &[k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + v;
    for (auto const &[k, v] : r.counts)
      counts += (counts.empty() ? "" : ";") + k + "=" + std::to_string(v);
    os << cell(r.check) << "," << cell(params) << "," << (r.pass ? "PASS" : "FAIL") << ","
       << cell(counts) << "," << cell(r.witness) << "\n";
  }
  return os.str();
}

}  // namespace charpow
