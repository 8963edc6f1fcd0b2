#include "casson/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <thread>

#include "casson/casson.hpp"
#include "casson/errors.hpp"
#include "casson/geomint.hpp"
#include "casson/morse.hpp"
#include "casson/moves.hpp"
#include "casson/natangle.hpp"
#include "casson/skein.hpp"

namespace casson::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kMethods{"gauss", "sym", "skein", "morse", "natangle"};
constexpr const char* kNotApplicable = "not applicable";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A knot given in one of the input notations, with whatever extra structure it carries.
struct Knot {
  BasedGaussDiagram diagram;
  std::optional<std::vector<int>> braid;
  std::optional<morse::PolyKnot> poly;
  std::optional<natangle::TangleWord> tangle;
};

// Payloads that name an existing file are read from it (relative to base_dir).
std::string file_or_text(const std::string& payload, const std::string& base_dir) {
  namespace fs = std::filesystem;
  fs::path p(payload);
  if (p.is_relative()) p = fs::path(base_dir) / p;
  std::error_code ec;
  if (payload.size() < 512 && fs::is_regular_file(p, ec)) return read_file(p.string());
  return payload;
}

Knot load_knot(const std::string& kind, const std::string& payload, const std::string& base_dir) {
  Knot k;
  if (kind == "gauss") {
    k.diagram = parse_gauss_code(payload);
  } else if (kind == "pd") {
    k.diagram = parse_pd_code(payload);
  } else if (kind == "braid" || kind == "torus") {
    std::string word = payload;
    if (kind == "torus") {
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(payload, &used);
        if (used != payload.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("torus payload must be an odd integer, got '" + payload + "'");
      }
      k.diagram = torus_knot_2(n);
      word = braid_word_string(std::vector<int>(n, 1));
    } else {
      k.diagram = from_braid_word(word);
    }
    k.braid = parse_braid_word(word);
  } else if (kind == "polyknot") {
    k.poly = morse::parse_polyknot_json(file_or_text(payload, base_dir));
    k.diagram = morse::project(*k.poly).gauss();
  } else if (kind == "tangle") {
    k.tangle = natangle::parse_tangle(file_or_text(payload, base_dir));
    k.diagram = natangle::gauss_of_tangle(*k.tangle);
  } else {
    throw ParseError("unknown input kind '" + kind + "'");
  }
  return k;
}

std::vector<std::string> expand(const std::vector<std::string>& methods) {
  std::vector<std::string> out;
  for (const auto& m : methods) {
    if (m == "all") {
      for (const auto& x : kMethods)
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    } else if (std::find(kMethods.begin(), kMethods.end(), m) != kMethods.end()) {
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    } else {
      throw ParseError("unknown method '" + m + "'");
    }
  }
  return out;
}

MethodResult compute(const Knot& k, const std::string& m) {
  MethodResult r{m, std::nullopt, ""};
  if (m == "gauss") {
    r.value = v2_gauss(k.diagram);
  } else if (m == "sym") {
    r.value = v2_sym(k.diagram);
  } else if (m == "skein") {
    r.value = v2_skein(k.diagram);
  } else if (m == "morse") {
    if (k.poly || k.braid) {
      const auto poly = k.poly ? *k.poly : morse::polyknot_from_braid(*k.braid, Shape::Long);
      const auto curve = morse::project(poly);
      r.value = curve.shape() == Shape::Long ? morse::v2_morse(curve) : morse::v2_morse_closed(curve);
      if (!k.poly) r.note = "polygon built from the braid";
    } else {
      r.note = kNotApplicable;
    }
  } else if (m == "natangle") {
    if (k.tangle || k.braid) {
      const auto word = k.tangle ? *k.tangle : natangle::tangle_from_braid(*k.braid);
      r.value = word.shape == Shape::Long ? natangle::v2_natangle(word) : natangle::v2_natangle_closed(word);
      if (!k.tangle) r.note = "tangle word built from the braid";
    } else {
      r.note = kNotApplicable;
    }
  }
  return r;
}

bool all_agree(const std::vector<MethodResult>& rs) {
  std::optional<long long> first;
  for (const auto& r : rs) {
    if (!r.value) continue;
    if (first && *first != *r.value) return false;
    if (!first) first = r.value;
  }
  return true;
}

json results_json(const std::vector<MethodResult>& rs) {
  json a = json::array();
  for (const auto& r : rs) {
    json j{{"method", r.method}};
    if (r.value)
      j["value"] = *r.value;
    else
      j["value"] = nullptr;
    if (!r.note.empty()) j["note"] = r.note;
    a.push_back(j);
  }
  return a;
}

std::optional<long long> consensus(const std::vector<MethodResult>& rs) {
  for (const auto& r : rs)
    if (r.value) return r.value;
  return std::nullopt;
}

json record_json(const BatchRecord& r) {
  json j{{"name", r.name}, {"kind", r.kind}, {"payload", r.payload}};
  if (r.error_code != kOk) {
    j["error"] = r.error;
    j["error_code"] = r.error_code;
    return j;
  }
  j["results"] = results_json(r.results);
  j["agree"] = r.agree;
  if (auto v = consensus(r.results)) j["v2"] = *v;
  j["chords"] = r.chords;
  j["bound"] = {{"value", r.bound}, {"ok", r.bound_ok}, {"sharp", r.sharp}};
  return j;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("CASSON_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ParseError(std::string("CASSON_SEED is not an integer: ") + s);
    }
  }
  return 1;
}

// Fields of one CSV line; double quotes protect commas and "" is a literal quote.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote");
  return out;
}

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Output {
  std::string path;
  std::string format = "json";
};

int emit(const Output& o, const json& j, const std::string& tsv, std::ostream& out, std::ostream& err) {
  const std::string text = o.format == "tsv" ? tsv : j.dump(2) + "\n";
  if (o.path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(o.path);
  if (!f) {
    err << "error: cannot write " << o.path << "\n";
    return kParse;
  }
  f << text;
  return kOk;
}

struct InputFlags {
  std::optional<std::string> gauss, pd, braid, polyknot, tangle;
  std::optional<int> torus;

  void add(CLI::App* app) {
    auto* g = app->add_option_group("input", "knot to read (exactly one)");
    g->add_option("--gauss", gauss, "Gauss code such as O1+U2+O3+U1+O2+U3+");
    g->add_option("--pd", pd, "planar diagram code X[a,b,c,d] ...");
    g->add_option("--braid", braid, "braid word such as \"s1 -s2 s1 -s2\"");
    g->add_option("--torus", torus, "torus knot T(n,2), odd n >= 3");
    g->add_option("--polyknot", polyknot, "polygonal knot JSON file");
    g->add_option("--tangle", tangle, "tangle word file");
    g->require_option(1);
  }
  std::pair<std::string, std::string> kind_payload() const {
    if (gauss) return {"gauss", *gauss};
    if (pd) return {"pd", *pd};
    if (braid) return {"braid", *braid};
    if (torus) return {"torus", std::to_string(*torus)};
    if (polyknot) return {"polyknot", *polyknot};
    return {"tangle", *tangle};
  }
  Knot load() const {
    auto [kind, payload] = kind_payload();
    return load_knot(kind, payload, ".");
  }
  json input_json() const {
    auto [kind, payload] = kind_payload();
    return {{"kind", kind}, {"payload", payload}};
  }
};

}  // namespace

std::vector<BatchRecord> ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<BatchRecord> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    BatchRecord r;
    try {
      auto f = split_csv(line);
      if (lineno == 1 && f.size() >= 2 && trim(f[0]) == "name" && trim(f[1]) == "kind") continue;
      if (f.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(f.size()));
      r.name = trim(f[0]);
      r.kind = trim(f[1]);
      r.payload = trim(f[2]);
    } catch (const ParseError& e) {
      r.name = "line " + std::to_string(lineno);
      r.error = e.what();
      r.error_code = kParse;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void evaluate(BatchRecord& r, const std::vector<std::string>& methods, const std::string& base_dir) {
  if (r.error_code != kOk) return;
  try {
    const auto k = load_knot(r.kind, r.payload, base_dir);
    for (const auto& m : expand(methods)) r.results.push_back(compute(k, m));
    r.agree = all_agree(r.results);
    r.chords = k.diagram.size();
    const auto b = check_bound(k.diagram);
    r.bound = b.bound;
    r.bound_ok = b.ok;
    r.sharp = b.ok && std::llabs(b.v2) == b.bound && b.bound > 0;
  } catch (const ParseError& e) {
    r.error = e.what();
    r.error_code = kParse;
  } catch (const ValidationError& e) {
    r.error = e.what();
    r.error_code = kValidation;
  } catch (const InconsistencyError& e) {
    r.error = e.what();
    r.error_code = kDisagreement;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casson knot invariant by several independent methods"};
  app.require_subcommand(1);
  app.fallthrough();
  Output o;
  app.add_option("-o,--output", o.path, "write the report to a file");
  app.add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));

  auto* v2 = app.add_subcommand("v2", "compute v2");
  InputFlags v2_in;
  v2_in.add(v2);
  std::vector<std::string> methods{"gauss"};
  bool trace = false;
  v2->add_option("--method", methods, "gauss|sym|skein|morse|natangle|all")->delimiter(',');
  v2->add_flag("--trace", trace, "include the crossing changes of the skein method");

  auto* arf_cmd = app.add_subcommand("arf", "Arf invariant and its parity check against v2");
  InputFlags arf_in;
  arf_in.add(arf_cmd);

  auto* bound_cmd = app.add_subcommand("bound", "crossing-number bound on |v2|");
  InputFlags bound_in;
  bound_in.add(bound_cmd);

  auto* gen = app.add_subcommand("gen", "random realizable Gauss diagram");
  std::optional<std::uint64_t> gen_seed;
  int letters = 8, gen_moves = 10;
  gen->add_option("--seed", gen_seed, "seed (default CASSON_SEED or 1)");
  gen->add_option("--letters", letters, "braid letters")->check(CLI::Range(0, 100000));
  gen->add_option("--moves", gen_moves, "Reidemeister and base-point moves")->check(CLI::Range(0, 100000));

  auto* mc = app.add_subcommand("moves-check", "apply random moves and check v2 and Arf are unchanged");
  InputFlags mc_in;
  mc_in.add(mc);
  std::optional<std::uint64_t> mc_seed;
  int mc_moves = 20;
  mc->add_option("--seed", mc_seed, "seed (default CASSON_SEED or 1)");
  mc->add_option("--moves", mc_moves, "number of moves")->check(CLI::Range(0, 100000));

  auto* integ = app.add_subcommand("integrate", "Monte Carlo integrals");
  std::optional<std::string> knot_file, link_file;
  std::uint64_t samples = 100000;
  std::optional<std::uint64_t> int_seed;
  bool report_variance = false;
  int workers = 1;
  auto* int_group = integ->add_option_group("input", "what to integrate (exactly one)");
  int_group->add_option("--knot", knot_file, "long polygonal knot JSON; estimates v2");
  int_group->add_option("--link", link_file, "JSON {\"loops\": [[[x,y,z],...],[...]]}; estimates the linking number");
  int_group->require_option(1);
  integ->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
  integ->add_option("--seed", int_seed, "seed (default CASSON_SEED or 1)");
  integ->add_option("--workers", workers, "threads")->check(CLI::Range(1, 256));
  integ->add_flag("--report-variance", report_variance, "include the sample variance");

  auto* batch = app.add_subcommand("batch", "process a CSV table name,kind,payload");
  std::string csv_path;
  std::vector<std::string> batch_methods{"all"};
  int batch_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  batch->add_option("table", csv_path, "CSV file")->required();
  batch->add_option("--method", batch_methods, "methods to run")->delimiter(',');
  batch->add_option("--workers", batch_workers, "threads")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*v2) {
      const auto k = v2_in.load();
      std::vector<MethodResult> rs;
      for (const auto& m : expand(methods)) rs.push_back(compute(k, m));
      const bool agree = all_agree(rs);
      json j{{"schema", kSchema}, {"command", "v2"}, {"input", v2_in.input_json()},
             {"chords", k.diagram.size()}, {"realizable", k.diagram.empty() || is_realizable(k.diagram)},
             {"results", results_json(rs)}, {"agree", agree}};
      if (auto v = consensus(rs)) j["v2"] = *v;
      if (trace) {
        json t = json::array();
        for (const auto& f : descend(k.diagram).flips)
          t.push_back({{"chord", f.chord}, {"sign", f.sign}, {"lk", f.lk}});
        j["trace"] = t;
      }
      std::string tsv = "method\tvalue\n";
      for (const auto& r : rs) tsv += r.method + "\t" + (r.value ? std::to_string(*r.value) : "NA") + "\n";
      const int code = emit(o, j, tsv, out, err);
      if (!agree) {
        err << "error: methods disagree"
            << (j["realizable"].get<bool>() ? "" : " (the diagram is not realizable by a plane curve)") << "\n";
        return kDisagreement;
      }
      return code;
    }
    if (*arf_cmd) {
      const auto k = arf_in.load();
      const int a = arf(k.diagram);
      const long long v = v2_gauss(k.diagram);
      const bool parity = ((v % 2) + 2) % 2 == a;
      json j{{"schema", kSchema}, {"command", "arf"}, {"input", arf_in.input_json()},
             {"arf", a}, {"v2", v}, {"parity_ok", parity}};
      const int code = emit(o, j, "arf\tv2\tparity_ok\n" + std::to_string(a) + "\t" + std::to_string(v) + "\t" +
                                      (parity ? "true" : "false") + "\n",
                            out, err);
      if (!parity) {
        err << "error: Arf invariant and v2 have different parity\n";
        return kDisagreement;
      }
      return code;
    }
    if (*bound_cmd) {
      const auto k = bound_in.load();
      const auto b = check_bound(k.diagram);
      const bool sharp = b.ok && std::llabs(b.v2) == b.bound && b.bound > 0;
      json j{{"schema", kSchema}, {"command", "bound"}, {"input", bound_in.input_json()},
             {"chords", k.diagram.size()}, {"v2", b.v2}, {"bound", b.bound}, {"ok", b.ok},
             {"sharp", sharp}, {"even_advisory", even_bound_advisory(k.diagram)}};
      const int code = emit(o, j, "chords\tv2\tbound\tok\tsharp\n" + std::to_string(k.diagram.size()) + "\t" +
                                      std::to_string(b.v2) + "\t" + std::to_string(b.bound) + "\t" +
                                      (b.ok ? "true" : "false") + "\t" + (sharp ? "true" : "false") + "\n",
                            out, err);
      if (!b.ok) {
        err << "error: |v2| exceeds the crossing bound\n";
        return kDisagreement;
      }
      return code;
    }
    if (*gen) {
      const std::uint64_t seed = gen_seed ? *gen_seed : default_seed();
      const auto g = random_realizable(seed, letters, gen_moves);
      json j{{"schema", kSchema}, {"command", "gen"}, {"seed", seed}, {"letters", letters},
             {"moves", gen_moves}, {"gauss", g.serialize()}, {"chords", g.size()}, {"v2", v2_gauss(g)}};
      return emit(o, j, "gauss\tchords\tv2\n" + g.serialize() + "\t" + std::to_string(g.size()) + "\t" +
                            std::to_string(v2_gauss(g)) + "\n",
                  out, err);
    }
    if (*mc) {
      const auto k = mc_in.load();
      const std::uint64_t seed = mc_seed ? *mc_seed : default_seed();
      std::mt19937_64 rng(seed);
      const long long v0 = v2_gauss(k.diagram);
      const int a0 = arf(k.diagram);
      auto g = k.diagram;
      json steps = json::array();
      bool ok = true;
      for (int i = 0; i < mc_moves; ++i) {
        const auto site = random_move(g, rng);
        g = apply(g, site);
        const long long v = v2_gauss(g);
        const int a = arf(g);
        steps.push_back({{"move", describe(site)}, {"chords", g.size()}, {"v2", v}, {"arf", a}});
        ok = ok && v == v0 && a == a0;
      }
      json j{{"schema", kSchema}, {"command", "moves-check"}, {"input", mc_in.input_json()},
             {"seed", seed}, {"v2", v0}, {"arf", a0}, {"final", g.serialize()},
             {"realizable", is_realizable(g)}, {"invariant", ok}, {"steps", steps}};
      std::string tsv = "step\tmove\tchords\tv2\tarf\n";
      for (std::size_t i = 0; i < steps.size(); ++i)
        tsv += std::to_string(i + 1) + "\t" + steps[i]["move"].get<std::string>() + "\t" +
               std::to_string(steps[i]["chords"].get<int>()) + "\t" +
               std::to_string(steps[i]["v2"].get<long long>()) + "\t" + std::to_string(steps[i]["arf"].get<int>()) +
               "\n";
      const int code = emit(o, j, tsv, out, err);
      if (!ok) {
        err << "error: a move changed v2 or Arf\n";
        return kDisagreement;
      }
      return code;
    }
    if (*integ) {
      const std::uint64_t seed = int_seed ? *int_seed : default_seed();
      geomint::McEstimate e;
      json j{{"schema", kSchema}, {"command", "integrate"}};
      if (knot_file) {
        const auto k = morse::parse_polyknot_json(read_file(*knot_file));
        e = geomint::v2_mc(k, samples, seed, workers);
        j["quantity"] = "v2";
        j["knot"] = *knot_file;
      } else {
        json doc;
        try {
          doc = json::parse(read_file(*link_file));
        } catch (const json::exception& ex) {
          throw ParseError(ex.what());
        }
        if (!doc.contains("loops") || !doc["loops"].is_array() || doc["loops"].size() != 2)
          throw ParseError("link file needs \"loops\": two arrays of points");
        std::vector<std::vector<geomint::Vec3>> loops(2);
        try {
          for (int i = 0; i < 2; ++i)
            for (const auto& p : doc["loops"][i]) loops[i].push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
        } catch (const json::exception& ex) {
          throw ParseError(ex.what());
        }
        e = geomint::linking_mc(loops[0], loops[1], samples, seed, workers);
        j["quantity"] = "linking number";
        j["link"] = *link_file;
      }
      j["value"] = e.value;
      j["std_error"] = e.std_error;
      j["samples"] = e.samples;
      j["seed"] = e.seed;
      j["rejected"] = e.rejected;
      if (report_variance) j["variance"] = e.std_error * e.std_error * static_cast<double>(e.samples);
      std::ostringstream tsv;
      tsv.precision(10);
      tsv << "value\tstd_error\tsamples\tseed\trejected\n"
          << e.value << "\t" << e.std_error << "\t" << e.samples << "\t" << e.seed << "\t" << e.rejected << "\n";
      return emit(o, j, tsv.str(), out, err);
    }
    if (*batch) {
      std::vector<BatchRecord> rows;
      try {
        rows = ingest_csv(csv_path);
      } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
      }
      expand(batch_methods);
      const std::string base = std::filesystem::path(csv_path).parent_path().string();
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) evaluate(rows[i], batch_methods, base.empty() ? "." : base);
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < std::max(1, batch_workers); ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();

      json recs = json::array();
      int errors = 0, disagreements = 0;
      std::string tsv = "name\tkind";
      for (const auto& m : expand(batch_methods)) tsv += "\t" + m;
      tsv += "\tagree\tsharp\terror\n";
      for (const auto& r : rows) {
        recs.push_back(record_json(r));
        if (r.error_code != kOk) ++errors;
        if (r.error_code == kDisagreement || !r.agree) ++disagreements;
        tsv += r.name + "\t" + r.kind;
        if (r.error_code != kOk) {
          for (std::size_t i = 0; i < expand(batch_methods).size(); ++i) tsv += "\t";
          tsv += "\t\t\t" + r.error + "\n";
          continue;
        }
        for (const auto& x : r.results) tsv += "\t" + (x.value ? std::to_string(*x.value) : std::string("NA"));
        tsv += std::string("\t") + (r.agree ? "true" : "false") + "\t" + (r.sharp ? "true" : "false") + "\t\n";
      }
      json j{{"schema", kSchema},
             {"command", "batch"},
             {"table", csv_path},
             {"records", recs},
             {"summary", {{"rows", rows.size()}, {"errors", errors}, {"disagreements", disagreements}}}};
      const int code = emit(o, j, tsv, out, err);
      if (disagreements > 0) {
        err << "error: " << disagreements << " rows with disagreeing methods\n";
        return kDisagreement;
      }
      return code;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const InconsistencyError& e) {
    err << "internal disagreement: " << e.what() << "\n";
    return kDisagreement;
  }
  return kOk;
}

}  // namespace casson::cli
