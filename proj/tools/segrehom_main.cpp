// Command line front end. Every command prints one JSON envelope
// {"command", "params", "e", "g", "ring", "result", "version"} on stdout
// (except betti --format csv, which prints a plain CSV table). Progress and
// diagnostics go to stderr. Exit codes: 0 success, 1 a requested check
// failed, 2 invalid arguments, 3 internal invariant breach.

#include <algorithm>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "segre/chessboard.hpp"
#include "segre/errors.hpp"
#include "segre/homology.hpp"
#include "segre/schur.hpp"
#include "segre/strands.hpp"

namespace {

using nlohmann::json;
using namespace segre;

constexpr const char* kVersion = "1.0.0";

struct Common {
  int e = 2;
  int g = 2;
  std::string ring = "z";
  std::string route = "auto";
  int threads = 0;
};

void add_dims(CLI::App* cmd, Common& c) {
  cmd->add_option("--e", c.e, "Rank of the row module")->check(CLI::PositiveNumber);
  cmd->add_option("--g", c.g, "Rank of the column module")->check(CLI::PositiveNumber);
}

void add_engine(CLI::App* cmd, Common& c) {
  cmd->add_option("--route", c.route, "auto, direct or strands");
  cmd->add_option("--threads", c.threads,
                  "Worker count (default: SEGREHOM_THREADS or 1)");
}

EngineOptions engine_options(const Common& c) {
  EngineOptions opt;
  opt.threads = c.threads;
  if (c.route == "auto")
    opt.route = Route::Auto;
  else if (c.route == "direct")
    opt.route = Route::Direct;
  else if (c.route == "strands")
    opt.route = Route::Strands;
  else
    throw OutOfRange("unknown route: " + c.route);
  return opt;
}

json invariants_json(const AbelianGroupInvariants& h) {
  json torsion = json::array();
  for (const Int& d : h.torsion) torsion.push_back(d.get_str());
  return {{"free_rank", h.free_rank}, {"torsion", torsion}, {"pretty", h.str()}};
}

json report_json(const ComplexReport& r) {
  return {{"ok", r.ok}, {"failures", r.failures}};
}

void emit(const std::string& command, const json& params, int e, int g,
          const std::string& ring, const json& result) {
  json envelope = {{"command", command}, {"params", params},
                   {"e", e},             {"g", g},
                   {"ring", ring},       {"result", result},
                   {"version", kVersion}};
  std::cout << envelope.dump(2) << std::endl;
}

Exponents to_exponents(const std::vector<int>& v) {
  return Exponents(v.begin(), v.end());
}

std::vector<int> parse_caps(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw OutOfRange("bad cap list entry: '" + item + "'");
    }
  }
  if (out.empty()) throw OutOfRange("empty cap list: '" + text + "'");
  return out;
}

int run_homology(const Common& c, const std::string& side, int m, int n,
                 int p) {
  Ring ring = parse_ring(c.ring);
  Kind kind;
  if (side == "N" || side == "n")
    kind = Kind::N;
  else if (side == "M" || side == "m")
    kind = Kind::M;
  else
    throw OutOfRange("side must be N or M");
  Dims d{c.e, c.g};
  auto h = (kind == Kind::N) ? homology_N(d, m, n, p, ring, engine_options(c))
                             : homology_M(d, m, n, p, ring, engine_options(c));
  json result = invariants_json(h);
  result["side"] = (kind == Kind::N) ? "N" : "M";
  result["m"] = m;
  result["n"] = n;
  result["p"] = p;
  emit("homology",
       {{"side", result["side"]}, {"m", m}, {"n", n}, {"p", p},
        {"route", c.route}},
       c.e, c.g, ring.name(), result);
  return 0;
}

int run_betti(const Common& c, int ell, const std::string& field, int qmax,
              const std::string& format) {
  Ring ring = parse_ring(field);
  Dims d{c.e, c.g};
  if (qmax < 0) qmax = d.grid() - d.e + std::max(0, -ell);
  BettiTable table = betti_table(d, ell, qmax, ring, engine_options(c));
  if (format == "csv") {
    std::cout << "p,q,beta\n";
    for (const auto& [pq, beta] : table.entries)
      std::cout << pq.first << "," << pq.second << "," << beta << "\n";
    return 0;
  }
  if (format != "json") throw OutOfRange("format must be json or csv");
  json entries = json::array();
  for (const auto& [pq, beta] : table.entries)
    entries.push_back({{"p", pq.first}, {"q", pq.second}, {"beta", beta}});
  emit("betti", {{"ell", ell}, {"qmax", qmax}, {"field", ring.name()}}, c.e,
       c.g, ring.name(), {{"ell", ell}, {"entries", entries}});
  return 0;
}

int run_chessboard(const std::vector<int>& rowcap, const std::vector<int>& colcap,
                   int dim, bool has_dim, const std::string& ring_text) {
  Ring ring = parse_ring(ring_text);
  Dims d{(int)rowcap.size(), (int)colcap.size()};
  Exponents rc = to_exponents(rowcap), cc = to_exponents(colcap);
  json result;
  auto f = chessboard_f_vector(d, rc, cc);
  result["f_vector"] = f;
  json hom = json::object();
  if (has_dim) {
    hom[std::to_string(dim)] =
        invariants_json(chessboard_homology(d, rc, cc, dim, ring));
  } else {
    for (int k = -1; k <= (int)f.size() - 2; ++k)
      hom[std::to_string(k)] =
          invariants_json(chessboard_homology(d, rc, cc, k, ring));
  }
  result["homology"] = hom;
  json params = {{"rowcap", rowcap}, {"colcap", colcap}};
  if (has_dim) params["dim"] = dim;
  emit("chessboard", params, d.e, d.g, ring.name(), result);
  return 0;
}

int finish_check(const json& params, const Common& c, const std::string& ring,
                 const ComplexReport& rep) {
  emit("verify", params, c.e, c.g, ring, report_json(rep));
  return rep.ok ? 0 : 1;
}

int run_verify_complex(const Common& c, int r, int s, bool negate) {
  Dims d{c.e, c.g};
  ChainComplex cx = build_C(d, r, s, negate);
  ComplexReport rep = verify_complex(cx);
  if (rep.ok) rep = verify_key_conservation(cx);
  return finish_check({{"target", "complex"}, {"r", r}, {"s", s},
                       {"negate_M", negate}},
                      c, "Z", rep);
}

int run_verify_split(const Common& c, int r, int s, bool all, bool negate) {
  Dims d{c.e, c.g};
  ComplexReport rep;
  if (all) {
    for (int rr = 0; rr <= c.e + c.g; ++rr)
      for (int ss = -2; ss <= d.alpha() + 2; ++ss) {
        std::cerr << "# split r=" << rr << " s=" << ss << "\n";
        ComplexReport one = check_split_exact(d, rr, ss, negate);
        if (!one.ok) {
          rep.ok = false;
          rep.failures.insert(rep.failures.end(), one.failures.begin(),
                              one.failures.end());
        }
      }
  } else {
    rep = check_split_exact(d, r, s, negate);
  }
  return finish_check({{"target", "split"}, {"r", r}, {"s", s}, {"all", all},
                       {"negate_M", negate}},
                      c, "Z", rep);
}

int run_verify_psi(const Common& c, int r, int s) {
  Dims d{c.e, c.g};
  ChainMap psi = build_psi(d, r, s);
  ComplexReport rep = verify_chain_map(psi);
  json result = report_json(rep);
  result["resolved_sign"] = psi.resolved_sign;
  emit("verify", {{"target", "psi"}, {"r", r}, {"s", s}}, c.e, c.g, "Z",
       result);
  return rep.ok ? 0 : 1;
}

int run_verify_duality(const Common& c, int m, int n, int p) {
  Ring ring = parse_ring(c.ring);
  Dims d{c.e, c.g};
  DualityResult res = check_duality(d, m, n, p, ring, engine_options(c));
  emit("verify",
       {{"target", "duality"}, {"m", m}, {"n", n}, {"p", p}},
       c.e, c.g, ring.name(),
       {{"ok", res.match},
        {"sym_side", invariants_json(res.sym_side)},
        {"div_side", invariants_json(res.div_side)}});
  return res.match ? 0 : 1;
}

int run_verify_zeta(const Common& c) {
  Dims d{c.e, c.g};
  ZetaReport rep = check_zeta(d);
  bool ok = rep.is_cycle && (rep.top_image == 1 || rep.top_image == -1);
  emit("verify", {{"target", "zeta"}}, c.e, c.g, "Z",
       {{"ok", ok},
        {"is_cycle", rep.is_cycle},
        {"top_image", rep.top_image.get_str()},
        {"terms", rep.terms}});
  return ok ? 0 : 1;
}

int run_verify_thm61(const Common& c, int m, int n, int p,
                     const std::vector<int>& div_rows,
                     const std::vector<int>& div_cols) {
  Dims d{c.e, c.g};
  ComplexReport rep;
  auto complement = [](const Exponents& v, int top) {
    Exponents out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = top - v[i];
    return out;
  };
  auto check_one = [&](const StrandKey& div_key) {
    StrandKey sym_key{complement(div_key.first, d.g - 1),
                      complement(div_key.second, d.e - 1)};
    StrandPairResult res = check_strand_duality(d, {m, n, p}, div_key, sym_key);
    if (!res.match) {
      rep.ok = false;
      rep.failures.push_back("strand mismatch: " + res.div_side.str() +
                             " vs " + res.sym_side.str());
    }
  };
  if (!div_rows.empty() || !div_cols.empty()) {
    check_one({to_exponents(div_rows), to_exponents(div_cols)});
  } else {
    auto fits = [](const Exponents& v, int top) {
      return std::all_of(v.begin(), v.end(),
                         [top](int x) { return x <= top; });
    };
    for (const auto& gamma : exponent_vectors(d.e, m + p)) {
      if (!fits(gamma, d.g - 1)) continue;
      for (const auto& delta : exponent_vectors(d.g, n + p)) {
        if (!fits(delta, d.e - 1)) continue;
        check_one({gamma, delta});
      }
    }
  }
  return finish_check({{"target", "thm61"}, {"m", m}, {"n", n}, {"p", p}},
                      c, "Z", rep);
}

int run_verify_cor62(const Common& c, int P, int Q) {
  Dims d{c.e, c.g};
  ComplexReport rep = check_e3_homology_symmetry(d, P, Q, engine_options(c));
  return finish_check({{"target", "cor62"}, {"P", P}, {"Q", Q}}, c, "Z", rep);
}

int run_verify_cor63(const Common& c, int ell, int q) {
  Ring ring = parse_ring(c.ring);
  Dims d{c.e, c.g};
  ComplexReport rep =
      check_e3_betti_symmetry(d, ell, q, ring, engine_options(c));
  return finish_check({{"target", "cor63"}, {"ell", ell}, {"q", q}}, c,
                      ring.name(), rep);
}

int run_verify_bridge(const std::vector<int>& rowcap,
                      const std::vector<int>& colcap, int ell, int p) {
  Dims d{(int)rowcap.size(), (int)colcap.size()};
  BridgeResult res = check_chessboard_bridge(d, to_exponents(rowcap),
                                             to_exponents(colcap), ell, p);
  emit("verify",
       {{"target", "bridge"}, {"rowcap", rowcap}, {"colcap", colcap},
        {"ell", ell}, {"p", p}},
       d.e, d.g, "Z",
       {{"ok", res.match},
        {"tor_side", invariants_json(res.tor_side)},
        {"complex_side", invariants_json(res.complex_side)}});
  return res.match ? 0 : 1;
}

int run_verify_cauchy(const Common& c, int p, bool has_p) {
  Dims d{c.e, c.g};
  ComplexReport rep;
  json cases = json::array();
  int lo = has_p ? p : 0;
  int hi = has_p ? p : d.grid() - c.e - c.g;
  for (int k = lo; k <= hi; ++k) {
    bool ok = cauchy_identity_check(d, k);
    cases.push_back({{"p", k}, {"ok", ok}});
    if (!ok) {
      rep.ok = false;
      rep.failures.push_back("cauchy fails at p=" + std::to_string(k));
    }
  }
  json result = report_json(rep);
  result["cases"] = cases;
  emit("verify", {{"target", "cauchy"}}, c.e, c.g, "Z", result);
  return rep.ok ? 0 : 1;
}

int run_verify_oracle(const Common& c, int ell, int qmax) {
  Dims d{c.e, c.g};
  if (qmax < 0) qmax = c.e + c.g + 3;
  ComplexReport rep = oracle_agreement(d, ell, qmax, engine_options(c));
  return finish_check({{"target", "oracle"}, {"ell", ell}, {"qmax", qmax}},
                      c, "Q", rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homological calculator for the two-family Koszul "
               "complexes on a bigraded grid"};
  app.require_subcommand(1);

  Common c;
  int rc = 0;

  // homology SIDE M N P
  std::string side;
  int m = 0, n = 0, p = 0;
  auto* hom = app.add_subcommand("homology",
                                 "Invariants of one homology module");
  hom->add_option("side", side, "N (symmetric) or M (divided power)")
      ->required();
  hom->add_option("m", m)->required();
  hom->add_option("n", n)->required();
  hom->add_option("p", p)->required();
  add_dims(hom, c);
  add_engine(hom, c);
  hom->add_option("--ring", c.ring, "z, q or gf<p>");
  bool strands_flag = false;
  hom->add_flag("--strands", strands_flag, "Force the strand route");
  hom->callback([&] {
    if (strands_flag) c.route = "strands";
    rc = run_homology(c, side, m, n, p);
  });

  // betti
  int ell = 0, qmax = -1;
  std::string field = "q", format = "json";
  auto* bet = app.add_subcommand("betti", "Graded Betti table over a field");
  bet->add_option("--ell", ell, "Module parameter")->required();
  bet->add_option("--field", field, "q or gf<p>");
  bet->add_option("--qmax", qmax, "Largest internal degree (default: derived)");
  bet->add_option("--format", format, "json or csv");
  add_dims(bet, c);
  add_engine(bet, c);
  bet->callback([&] { rc = run_betti(c, ell, field, qmax, format); });

  // chessboard ROWCAP COLCAP
  std::vector<int> rowcap, colcap;
  std::string rowcap_text, colcap_text;
  int dim = 0;
  auto* chess = app.add_subcommand(
      "chessboard", "Reduced homology of a capped grid complex");
  chess->add_option("rowcap", rowcap_text, "Per-row caps, comma separated")
      ->required();
  chess->add_option("colcap", colcap_text, "Per-column caps, comma separated")
      ->required();
  auto* dim_opt = chess->add_option("--dim", dim, "Single degree to compute");
  chess->add_option("--ring", c.ring, "z, q or gf<p>");
  chess->callback([&] {
    rc = run_chessboard(parse_caps(rowcap_text), parse_caps(colcap_text), dim,
                        dim_opt->count() > 0, c.ring);
  });

  // verify TARGET
  auto* ver = app.add_subcommand("verify", "Machine-checked statements");
  ver->require_subcommand(1);
  int r = 0, s = 0, P = 0, Q = 0, q = 0;
  bool negate = false, all = false;
  std::vector<int> div_rows, div_cols;

  auto* vcomplex = ver->add_subcommand("complex", "d o d = 0 and strand keys");
  vcomplex->add_option("--r", r)->required();
  vcomplex->add_option("--s", s)->required();
  vcomplex->add_flag("--negate-M", negate, "Flip one duality block first");
  add_dims(vcomplex, c);
  vcomplex->callback([&] { rc = run_verify_complex(c, r, s, negate); });

  auto* vsplit = ver->add_subcommand("split", "Vanishing integral homology");
  vsplit->add_option("--r", r);
  vsplit->add_option("--s", s);
  vsplit->add_flag("--all", all, "Sweep all r and s in range");
  vsplit->add_flag("--negate-M", negate);
  add_dims(vsplit, c);
  vsplit->callback([&] {
    if (!all && (vsplit->count("--r") == 0 || vsplit->count("--s") == 0))
      throw CLI::ValidationError("verify split", "needs --r and --s or --all");
    rc = run_verify_split(c, r, s, all, negate);
  });

  auto* vpsi = ver->add_subcommand("psi", "Comparison chain map squares");
  vpsi->add_option("--r", r)->required();
  vpsi->add_option("--s", s)->required();
  add_dims(vpsi, c);
  vpsi->callback([&] { rc = run_verify_psi(c, r, s); });

  auto* vdual = ver->add_subcommand("duality", "Two-family homology duality");
  vdual->add_option("--m", m)->required();
  vdual->add_option("--n", n)->required();
  vdual->add_option("--p", p)->required();
  vdual->add_option("--ring", c.ring);
  add_dims(vdual, c);
  add_engine(vdual, c);
  vdual->callback([&] { rc = run_verify_duality(c, m, n, p); });

  auto* vzeta = ver->add_subcommand("zeta", "Distinguished cycle");
  add_dims(vzeta, c);
  vzeta->callback([&] { rc = run_verify_zeta(c); });

  auto* vthm = ver->add_subcommand("thm61", "Strandwise duality");
  vthm->add_option("--m", m)->required();
  vthm->add_option("--n", n)->required();
  vthm->add_option("--p", p)->required();
  vthm->add_option("--div-rows", div_rows)->delimiter(',');
  vthm->add_option("--div-cols", div_cols)->delimiter(',');
  add_dims(vthm, c);
  vthm->callback([&] { rc = run_verify_thm61(c, m, n, p, div_rows, div_cols); });

  auto* vc62 = ver->add_subcommand("cor62", "Homology symmetry at e = 3");
  vc62->add_option("--P", P)->required();
  vc62->add_option("--Q", Q)->required();
  add_dims(vc62, c);
  add_engine(vc62, c);
  vc62->callback([&] { rc = run_verify_cor62(c, P, Q); });

  auto* vc63 = ver->add_subcommand("cor63", "Betti symmetry at e = 3");
  vc63->add_option("--ell", ell)->required();
  vc63->add_option("--q", q)->required();
  vc63->add_option("--ring", c.ring);
  add_dims(vc63, c);
  add_engine(vc63, c);
  vc63->callback([&] {
    if (c.ring == "z") c.ring = "q";
    rc = run_verify_cor63(c, ell, q);
  });

  auto* vbridge = ver->add_subcommand(
      "bridge", "Strand of Tor against the grid complex");
  vbridge->add_option("--rowcap", rowcap)->required()->delimiter(',');
  vbridge->add_option("--colcap", colcap)->required()->delimiter(',');
  vbridge->add_option("--ell", ell)->required();
  vbridge->add_option("--p", p)->required();
  vbridge->callback([&] { rc = run_verify_bridge(rowcap, colcap, ell, p); });

  auto* vcauchy = ver->add_subcommand("cauchy", "Closed-form column sums");
  auto* p_opt = vcauchy->add_option("--p", p, "Single degree (default: all)");
  add_dims(vcauchy, c);
  vcauchy->callback(
      [&] { rc = run_verify_cauchy(c, p, p_opt->count() > 0); });

  auto* voracle = ver->add_subcommand("oracle",
                                      "Engine against the closed form");
  voracle->add_option("--ell", ell)->required();
  voracle->add_option("--qmax", qmax);
  add_dims(voracle, c);
  add_engine(voracle, c);
  voracle->callback([&] { rc = run_verify_oracle(c, ell, qmax); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CompositionNotZero& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotPrime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegreeMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
