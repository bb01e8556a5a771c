#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bow/bq.hpp"
#include "bow/farey.hpp"
#include "bow/pscheck.hpp"
#include "bow/scan.hpp"

namespace {

using bow::Complex;

constexpr int kExitParse = 2;
constexpr int kExitElementary = 3;

struct ParseFail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Accepts "1.5", "-2", "1+2i", "-1.5-0.25i", "2i", "-i".
Complex parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw ParseFail("empty complex literal");
  // Split at the last +/- that is not an exponent sign and not leading.
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto number = [](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) throw ParseFail("bad number: " + t);
    return v;
  };
  if (s.back() == 'i' || s.back() == 'I') {
    std::string imag = s.substr(0, s.size() - 1);
    if (split == std::string::npos) return {0.0, number(imag)};
    return {number(s.substr(0, split)), number(imag.substr(split))};
  }
  if (split != std::string::npos) throw ParseFail("bad complex: " + s);
  return {number(s), 0.0};
}

bow::TraceTriple parse_triple(const std::string& s) {
  std::vector<std::string> parts;
  size_t start = 0, depth = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == ',' && depth == 0 && parts.size() < 2)) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3) throw ParseFail("expected x,y,z");
  return {parse_complex(parts[0]), parse_complex(parts[1]),
          parse_complex(parts[2])};
}

bow::Rational parse_rational(const std::string& s) {
  long long p = 0, q = 1;
  if (std::sscanf(s.c_str(), "%lld/%lld", &p, &q) != 2)
    throw ParseFail("expected rational p/q: " + s);
  return bow::Rational(p, q);
}

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text << "\n";
  else
    write_text(out, text + "\n");
}

std::string verdict_string(const bow::BqVerdict& v) {
  switch (v.outcome) {
    case bow::BqOutcome::SatisfiesBQ:
      return "bq";
    case bow::BqOutcome::FailsBQ:
      return "not_bq";
    default:
      return "unknown";
  }
}

std::string ps_string(bow::PsOutcome o) {
  switch (o) {
    case bow::PsOutcome::LikelyPS:
      return "likely_ps";
    case bow::PsOutcome::NotPS:
      return "not_ps";
    default:
      return "unknown";
  }
}

int cmd_classify(const std::string& triple, int budget, double m, int level,
                 double tol, const std::string& out) {
  bow::TraceTriple base = parse_triple(triple);
  bow::BqConfig cfg{m, budget, 100, tol};
  bow::BqVerdict bq = bow::bq_test(base, cfg);
  bow::PsVerdict ps = bow::ps_verdict(base, {level, 1e-3, tol});
  bow::BipReport bip = bow::bip_report(base, level);
  nlohmann::json j;
  j["schema_version"] = 1;
  j["bq"] = verdict_string(bq);
  j["bq_detail"] = nlohmann::json::parse(bow::verdict_json(bq));
  j["ps"] = ps_string(ps.outcome);
  j["ps_detail"] = nlohmann::json::parse(bow::ps_json(ps));
  j["bip_D"] = bip.D_hat;
  j["level"] = level;
  j["budget"] = budget;
  emit(out, j.dump(2));
  return 0;
}

int cmd_words(int level, const std::string& format, const std::string& out) {
  using namespace bow;
  std::vector<Rational> regions;
  regions.push_back(Rational::infinity());
  for (long long q = 1; q <= level; ++q)
    for (long long p = 0; p <= level - q; ++p)
      if (std::gcd(p, q) == 1) regions.emplace_back(p, q);
  std::sort(regions.begin(), regions.end());
  nlohmann::json rows = nlohmann::json::array();
  std::string text;
  for (const Rational& r : regions) {
    Word w = farey_word(r);
    nlohmann::json row;
    row["region"] = r.str();
    row["word"] = w.str();
    row["exp_a"] = w.exp_a();
    row["exp_b"] = w.exp_b();
    row["type"] = mod2_type(r).str();
    nlohmann::json pals = nlohmann::json::object();
    std::string paltext;
    for (BasicPair p : {BasicPair::AB, BasicPair::A_AB, BasicPair::B_AB}) {
      if (!admits(p, mod2_type(r))) continue;
      try {
        Word pal = palindromic_representative(r, p);
        pals[pair_name(p)] = pal.str();
        paltext += std::string(" pal") + pair_name(p) + "=" + pal.str();
      } catch (const NotFound&) {
      }
    }
    row["palindromes"] = pals;
    rows.push_back(row);
    text += r.str() + "\t" + w.str() + "\texp=(" +
            std::to_string(w.exp_a()) + "," + std::to_string(w.exp_b()) +
            ")\ttype=" + mod2_type(r).str() + paltext + "\n";
  }
  if (format == "json") {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["level"] = level;
    j["rows"] = rows;
    emit(out, j.dump(2));
  } else {
    if (!text.empty()) text.pop_back();
    emit(out, text);
  }
  return 0;
}

void dump_vertex(const bow::TraceTriple& base, const bow::TreeVertex& v,
                 int depth, double m, int skip_slot, std::string& text,
                 int indent) {
  using namespace bow;
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  auto show = [&](const RegionRef& r) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s:(%.6g%+.6gi)", r.addr.str().c_str(),
                  r.trace.real(), r.trace.imag());
    std::string s(buf);
    if (std::abs(r.trace) <= m + 1e-9 * (1.0 + m)) s += "*";
    return s;
  };
  text += pad + "[" + show(v.u) + " " + show(v.v) + " " + show(v.w) + "]\n";
  if (depth == 0) return;
  std::array<RegionRef, 3> rr = {v.u, v.v, v.w};
  for (int k = 0; k < 3; ++k) {
    if (k == skip_slot) continue;  // the edge we came in through
    const RegionRef& a = rr[(k + 1) % 3];
    const RegionRef& b = rr[(k + 2) % 3];
    OrientedEdge e = orient_edge(a, b, rr[k]);
    text += pad + "  edge(" + a.addr.str() + "," + b.addr.str() + ") arrow " +
            (e.toward_w ? "inward" : "outward") +
            (e.decisive ? "" : " (tie)") + "\n";
    // In the child vertex (a, b, z), slot 2 holds z: the edge back to us.
    dump_vertex(base, TreeVertex{a, b, e.z}, depth - 1, m, 2, text,
                indent + 1);
  }
}

int cmd_tree(const std::string& triple, int depth, double m,
             const std::string& out) {
  bow::TraceTriple base = parse_triple(triple);
  std::string text;
  dump_vertex(base, bow::base_vertex(base), depth, m, -1, text, 0);
  if (!text.empty()) text.pop_back();
  emit(out, text);
  return 0;
}

int cmd_scan(const std::string& family, const std::string& window,
             const std::string& size, const std::string& image, int budget,
             double m, double tol, int threads, const std::string& x0,
             const std::string& y0, std::vector<std::string> affine,
             const std::string& out) {
  using namespace bow;
  SliceFamily fam;
  if (family == "diagonal") {
    fam = SliceFamily::diagonal();
  } else if (family == "fixed-xy") {
    fam = SliceFamily::fixed_xy(parse_complex(x0), parse_complex(y0));
  } else if (family == "custom") {
    if (affine.size() != 6)
      throw ParseFail("custom family needs --affine c0 c1 c0 c1 c0 c1");
    fam.kind = SliceFamily::Kind::CustomAffine;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 2; ++k)
        fam.affine[i][k] = parse_complex(affine[2 * i + k]);
  } else {
    throw ParseFail("unknown family: " + family);
  }
  ScanConfig cfg;
  if (std::sscanf(window.c_str(), "%lf,%lf,%lf,%lf", &cfg.window.re0,
                  &cfg.window.im0, &cfg.window.re1, &cfg.window.im1) != 4)
    throw ParseFail("bad --window, expected re0,im0,re1,im1");
  if (std::sscanf(size.c_str(), "%dx%d", &cfg.width, &cfg.height) != 2 ||
      cfg.width < 1 || cfg.height < 1)
    throw ParseFail("bad --size, expected WxH");
  cfg.bq.depth_budget = budget;
  cfg.bq.m = m;
  cfg.bq.tol = tol;
  cfg.threads = threads;
  if (image == "pgm")
    cfg.image = ImageFormat::pgm;
  else if (image == "ppm")
    cfg.image = ImageFormat::ppm;
  else
    throw ParseFail("bad --image, expected pgm or ppm");
  ScanResult r = cfg.threads > 1 ? scan_parallel(fam, cfg)
                                 : scan_serial(fam, cfg);
  std::string path = out.empty() ? ("slice." + image) : out;
  write_bytes(path,
              cfg.image == ImageFormat::pgm ? encode_pgm(r) : encode_ppm(r));
  write_text(path + ".json", sidecar_json(fam, cfg, r) + "\n");
  std::cout << "wrote " << path << " and " << path << ".json\n";
  return 0;
}

int cmd_report(const std::string& triple, int budget, double m, int level,
               double tol, const std::string& probe_from,
               const std::string& out) {
  using namespace bow;
  TraceTriple base = parse_triple(triple);
  nlohmann::json j;
  j["schema_version"] = 1;
  BqVerdict bq = bq_test(base, {m, budget, 100, tol});
  j["bq"] = nlohmann::json::parse(verdict_json(bq));
  j["ps"] = nlohmann::json::parse(ps_json(ps_verdict(base, {level, 1e-3, tol})));
  j["bip"] = nlohmann::json::parse(bip_json(bip_report(base, level)));
  FibGrowthReport fib = fibonacci_growth_report(base, level);
  j["fibonacci"] = {{"c_lower", fib.c_lower},
                    {"c_upper", fib.c_upper},
                    {"violations", fib.violations.size()}};
  if (!probe_from.empty()) {
    Rational from = parse_rational(probe_from);
    Mod2Type eta = mod2_type(from);
    Mod2Type other = eta == kType01 ? kType10 : kType01;
    auto path = descending_path(base, from, m + 0.5, other, 4 * budget);
    DecayProbe probe = perpendicular_decay_probe(base, path);
    j["decay"] = {{"samples", probe.gaps.size()},
                  {"slope", probe.slope},
                  {"intercept", probe.intercept},
                  {"sum_gaps", probe.sum_gaps},
                  {"end_span", probe.end_span}};
  }
  emit(out, j.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Farey words, Markoff trace trees, BQ / primitive-stability "
               "classification, and parameter-plane slices"};
  app.require_subcommand(1);

  int budget = 1024, level = 10, threads = 1, depth = 2;
  double m = 3.0, tol = 1e-9;
  std::string out, format = "text";
  std::string triple, window = "-3,-3,3,3", size = "64x64", image = "pgm";
  std::string family = "diagonal", x0 = "2", y0 = "2", probe_from;
  std::vector<std::string> affine;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--budget", budget, "tree exploration budget");
    c->add_option("--m", m, "Omega threshold (>= 2)");
    c->add_option("--level", level, "word/primitive depth |p|+q");
    c->add_option("--tol", tol, "numeric tolerance");
    c->add_option("--threads", threads, "worker threads");
    c->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out", out, "output path (default: stdout)");
  };

  CLI::App* classify = app.add_subcommand("classify", "bq/ps/bip verdicts");
  classify->add_option("triple", triple, "traces x,y,z")->required();
  add_common(classify);

  CLI::App* words = app.add_subcommand("words", "Farey word table");
  add_common(words);

  CLI::App* tree = app.add_subcommand("tree", "trace tree dump");
  tree->add_option("triple", triple, "traces x,y,z")->required();
  tree->add_option("--depth", depth, "tree depth");
  add_common(tree);

  CLI::App* scan = app.add_subcommand("scan", "parameter-plane slice image");
  scan->add_option("--family", family, "diagonal, fixed-xy or custom")
      ->check(CLI::IsMember({"diagonal", "fixed-xy", "custom"}));
  scan->add_option("--window", window, "re0,im0,re1,im1");
  scan->add_option("--size", size, "WxH pixels");
  scan->add_option("--image", image, "pgm or ppm");
  scan->add_option("--x0", x0, "fixed-xy: trace x");
  scan->add_option("--y0", y0, "fixed-xy: trace y");
  scan->add_option("--affine", affine,
                   "custom: six complex coefficients c0 c1 per trace")
      ->expected(0, 6);
  add_common(scan);

  CLI::App* report = app.add_subcommand("report", "full JSON report");
  report->add_option("triple", triple, "traces x,y,z")->required();
  report->add_option("--probe", probe_from,
                     "decay probe start region p/q");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParse;
  }

  try {
    if (classify->parsed())
      return cmd_classify(triple, budget, m, level, tol, out);
    if (words->parsed()) return cmd_words(level, format, out);
    if (tree->parsed()) return cmd_tree(triple, depth, m, out);
    if (scan->parsed())
      return cmd_scan(family, window, size, image, budget, m, tol, threads,
                      x0, y0, affine, out);
    if (report->parsed())
      return cmd_report(triple, budget, m, level, tol, probe_from, out);
  } catch (const ParseFail& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const bow::ElementaryRepresentation& e) {
    std::cerr << "elementary representation: " << e.what() << "\n";
    return kExitElementary;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
