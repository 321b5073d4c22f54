#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "jacclan/morita.hpp"
#include "jacclan/stringband.hpp"
#include "json.hpp"

using namespace jc;
using json = nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kInputError = 3 };

struct Source {
  std::string file;
  int block = 0;
  std::string xi = "0,0,0";
  std::string mode;
  std::string weights;
  std::string cocycle;
  std::string datum;
};

struct Output {
  bool json = false;
  bool dot = false;
};

void add_source(CLI::App* cmd, Source& s, bool positional = true) {
  if (positional) cmd->add_option("triangulation", s.file, "triangulation JSON file");
  else cmd->add_option("--surface", s.file, "triangulation JSON file");
  cmd->add_option("--block", s.block, "building block 1..10 instead of a file")->check(CLI::Range(1, 10));
  cmd->add_option("--xi", s.xi, "block cocycle triple (alpha,beta,gamma), e.g. 1,1,0");
  cmd->add_option("--mode", s.mode, "arbitrary or constant4")->check(CLI::IsMember({"arbitrary", "constant4"}));
  cmd->add_option("--weights", s.weights, "pending weights in listing order, e.g. 1,4");
  cmd->add_option("--cocycle", s.cocycle, "cocycle values, e.g. 'x->y=1,y->z=1'");
  cmd->add_option("--datum", s.datum, "field:degree[:c[:zeta]], e.g. F5:4:2:2 or Q:2:-1");
}

void add_output(CLI::App* cmd, Output& o, bool dot = false) {
  cmd->add_flag("--json", o.json, "machine-readable output");
  if (dot) cmd->add_flag("--dot", o.dot, "Graphviz output");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

int to_int(const std::string& x) {
  try {
    size_t pos = 0;
    int v = std::stoi(x, &pos);
    if (pos != x.size()) throw std::invalid_argument(x);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "not an integer: " + x);
  }
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& x : split(s, ',')) out.push_back(to_int(x));
  return out;
}

struct Loaded {
  Triangulation tau;
  DatumPtr datum;
  int block = 0;
  std::array<int, 3> xi{0, 0, 0};
};

Loaded load(const Source& s) {
  Loaded L;
  if (s.block) {
    auto xi = int_list(s.xi);
    if (xi.size() != 3) fail(ErrorKind::ParseError, "--xi needs three values");
    L.xi = {xi[0], xi[1], xi[2]};
    L.tau = block_triangulation(s.block, L.xi);
    L.block = s.block;
    if (!s.weights.empty() || !s.cocycle.empty() || !s.mode.empty())
      fail(ErrorKind::ParseError, "--weights, --cocycle and --mode do not apply to --block");
  } else if (!s.file.empty()) {
    L.tau = load_triangulation(s.file);
  } else {
    fail(ErrorKind::ParseError, "give a triangulation file or --block");
  }
  if (!s.mode.empty()) L.tau.mode = s.mode == "arbitrary" ? SurfaceMode::Arbitrary : SurfaceMode::Constant;
  if (!s.weights.empty()) L.tau.set_weights(int_list(s.weights));
  for (const auto& kv : split(s.cocycle, ',')) {
    auto eq = kv.rfind('=');
    if (eq == std::string::npos) fail(ErrorKind::ParseError, "cocycle entry needs name=value: " + kv);
    L.tau.cocycle[kv.substr(0, eq)] = to_int(kv.substr(eq + 1)) & 1;
  }
  std::string dtext = s.datum;
  if (dtext.empty()) dtext = L.tau.mode == SurfaceMode::Arbitrary ? "F5:4:2:2" : "F5:2:2";
  L.datum = parse_datum(dtext);
  return L;
}

struct Pair {
  Species sp;
  ClannishPresentation cl;
};

Pair build_pair(const Loaded& L) {
  if (L.block) {
    Block b = make_block(L.block, L.datum, L.datum, L.xi);
    return Pair{std::move(b.species), std::move(b.clannish)};
  }
  return Pair{build_species(L.tau, L.datum), build_clannish(L.tau, L.datum)};
}

const char* mode_name(SurfaceMode m) { return m == SurfaceMode::Arbitrary ? "arbitrary" : "constant4"; }

json quiver_json(const PathAlgebra& A) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : A.quiver().vertices) j["vertices"].push_back({{"name", v.name}, {"weight", v.weight}});
  j["arrows"] = json::array();
  for (const auto& a : A.quiver().arrows)
    j["arrows"].push_back({{"name", a.name},
                           {"tail", A.quiver().vertices[a.tail].name},
                           {"head", A.quiver().vertices[a.head].name},
                           {"gexp", a.gexp},
                           {"special", a.special}});
  return j;
}

void print_quiver(std::ostream& os, const PathAlgebra& A) {
  for (const auto& v : A.quiver().vertices) os << "  vertex " << v.name << " weight " << v.weight << "\n";
  for (const auto& a : A.quiver().arrows)
    os << "  " << (a.special ? "loop " : "arrow ") << a.name << ": " << A.quiver().vertices[a.tail].name << " -> "
       << A.quiver().vertices[a.head].name << " rho^" << a.gexp << "\n";
}

std::vector<std::pair<std::string, std::string>> derivative_list(const Species& sp) {
  std::vector<std::pair<std::string, std::string>> out;
  auto ds = sp.derivatives();
  for (size_t a = 0; a < ds.size(); ++a) out.emplace_back(sp.A.quiver().arrows[a].name, sp.A.str(ds[a]));
  return out;
}

std::vector<std::string> zero_relation_list(const ClannishPresentation& cl) {
  std::vector<std::string> out;
  for (const auto& [l, r] : cl.rel.zero_pairs) out.push_back(cl.A.quiver().arrows[l].name + "." + cl.A.quiver().arrows[r].name);
  return out;
}

std::vector<std::string> quadratic_list(const ClannishPresentation& cl) {
  std::vector<std::string> out;
  for (size_t k = 0; k < cl.loop_at.size(); ++k)
    if (cl.loop_at[k] >= 0) out.push_back(cl.A.str(cl.quadratic(static_cast<int>(k))));
  return out;
}

int cmd_build(const Source& src, const Output& out) {
  Loaded L = load(src);
  Pair P = build_pair(L);
  if (out.dot) {
    std::cout << species_dot(P.sp) << clannish_dot(P.cl);
    return kOk;
  }
  auto ders = derivative_list(P.sp);
  auto zeros = zero_relation_list(P.cl);
  auto quads = quadratic_list(P.cl);
  if (out.json) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["datum"] = L.datum->str();
    j["mode"] = mode_name(L.tau.mode);
    j["species"] = quiver_json(P.sp.A);
    j["potential"] = P.sp.A.str(P.sp.W);
    j["derivatives"] = json::array();
    for (const auto& [a, d] : ders) j["derivatives"].push_back({{"arrow", a}, {"value", d}});
    j["clannish"] = quiver_json(P.cl.A);
    j["clannish"]["zero_relations"] = zeros;
    j["clannish"]["quadratics"] = quads;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "datum: " << L.datum->str() << "\nmode: " << mode_name(L.tau.mode) << "\nspecies:\n";
  print_quiver(std::cout, P.sp.A);
  std::cout << "potential: W = " << P.sp.A.str(P.sp.W) << "\nderivatives:\n";
  for (const auto& [a, d] : ders) std::cout << "  d_" << a << " W = " << d << "\n";
  std::cout << "clannish:\n";
  print_quiver(std::cout, P.cl.A);
  std::cout << "  zero relations:";
  for (const auto& z : zeros) std::cout << " " << z;
  std::cout << "\n";
  for (const auto& q : quads) std::cout << "  quadratic: " << q << "\n";
  return kOk;
}

int cmd_dim(const Source& src, const Output& out) {
  Pair P = build_pair(load(src));
  auto J = P.sp.jacobian();
  auto C = P.cl.algebra();
  if (out.json) {
    json j{{"schema_version", kSchemaVersion}, {"jacobian", J.dim()}, {"clannish", C.dim()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "jacobian: " << J.dim() << ", clannish: " << C.dim() << "\n";
  }
  return kOk;
}

int cmd_derivatives(const Source& src, const Output& out) {
  Pair P = build_pair(load(src));
  auto ders = derivative_list(P.sp);
  if (out.json) {
    json j{{"schema_version", kSchemaVersion}, {"potential", P.sp.A.str(P.sp.W)}, {"derivatives", json::array()}};
    for (const auto& [a, d] : ders) j["derivatives"].push_back({{"arrow", a}, {"value", d}});
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& [a, d] : ders) std::cout << "d_" << a << " W = " << d << "\n";
  }
  return kOk;
}

int cmd_strings(const Source& src, const Output& out, size_t n, size_t period) {
  Pair P = build_pair(load(src));
  const auto& A = P.cl.A;
  auto strings = src.block ? enumerate_families(P.cl, n) : enumerate_strings(P.cl, 4 * n + 5);
  auto bands = enumerate_bands(P.cl, period);
  std::vector<std::string> asym, sym, bsym, basym;
  for (const auto& w : strings) (w.symmetric ? sym : asym).push_back(word_str(A, w.word));
  for (const auto& w : bands) (w.symmetric ? bsym : basym).push_back(word_str(A, w.word));
  if (out.json) {
    json j{{"schema_version", kSchemaVersion},
           {"n", n},
           {"asymmetric_strings", asym},
           {"symmetric_strings", sym},
           {"asymmetric_bands", basym},
           {"symmetric_bands", bsym}};
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  auto section = [](const std::string& title, const std::vector<std::string>& xs) {
    std::cout << title << ":" << (xs.empty() ? " none" : "") << "\n";
    for (const auto& x : xs) std::cout << "  " << x << "\n";
  };
  section("asymmetric strings", asym);
  section("symmetric strings", sym);
  section("asymmetric bands", basym);
  section("symmetric bands", bsym);
  return kOk;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_module(const Source& src, const Output& out, const std::string& side, const std::string& file, const std::string& word,
               const std::string& functor) {
  Pair P = build_pair(load(src));
  const bool jac = side == "jacobian";
  Morita F(P.sp, P.cl);
  const QuotientAlgebra& Q = jac ? F.jacobian() : F.clannish();
  const PathAlgebra& A = Q.algebra();
  Representation M;
  if (!word.empty()) {
    if (jac) fail(ErrorKind::ParseError, "string modules live on the clannish side");
    M = string_module(P.cl, parse_word(A, word));
  } else if (!file.empty()) {
    M = representation_from_json(A, read_file(file));
  } else {
    fail(ErrorKind::ParseError, "give --file or --string");
  }
  auto errs = validate(Q, M);
  const PathAlgebra* outA = &A;
  if (errs.empty() && !functor.empty()) {
    if (functor == "psi" && !jac) fail(ErrorKind::ParseError, "psi takes a Jacobian-side module");
    if (functor == "phi" && jac) fail(ErrorKind::ParseError, "phi takes a clannish-side module");
    M = functor == "psi" ? F.psi(M) : F.phi(M);
    outA = functor == "psi" ? &P.cl.A : &P.sp.A;
  }
  if (out.json) {
    if (!errs.empty()) {
      json j{{"schema_version", kSchemaVersion}, {"valid", false}, {"errors", errs}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << representation_json(*outA, M) << "\n";
    }
    return errs.empty() ? kOk : kCheckFailed;
  }
  if (!errs.empty()) {
    std::cout << "invalid:\n";
    for (const auto& e : errs) std::cout << "  " << e << "\n";
    return kCheckFailed;
  }
  std::cout << "valid\ndims:";
  for (auto d : M.dims) std::cout << " " << d;
  std::cout << "\ntotal: " << M.total() << "\n";
  try {
    std::cout << "indecomposable: " << (is_indecomposable(*outA, M) ? "yes" : "no") << "\n";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RadicalAlgorithmUnsupported) throw;
    std::cout << "indecomposable: undecided\n";
  }
  return kOk;
}

int cmd_verify(const Source& src, const Output& out, const SamplePlan& plan) {
  Pair P = build_pair(load(src));
  MoritaReport rep = verify_equivalence(P.sp, P.cl, plan);
  std::cout << (out.json ? rep.json() + "\n" : rep.table());
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_h1(const Source& src, const Output& out) {
  Loaded L = load(src);
  H1Info h = h1(L.tau);
  if (out.json) {
    json j{{"schema_version", kSchemaVersion}, {"dim_c1", h.dim_c1}, {"dim_z1", h.dim_z1}, {"dim_b1", h.dim_b1},
           {"dim_h1", h.dim_h1}, {"boundary_squared_zero", h.boundary_squared_zero}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "C1: " << h.dim_c1 << "\nZ1: " << h.dim_z1 << "\nB1: " << h.dim_b1 << "\nH1: " << h.dim_h1
              << "\nd1 d2 = 0: " << (h.boundary_squared_zero ? "yes" : "no") << "\n";
  }
  return h.boundary_squared_zero ? kOk : kCheckFailed;
}

int cmd_blockcheck(const std::string& datum4, const std::string& datum2, int only, const Output& out, uint64_t seed) {
  DatumPtr d4 = parse_datum(datum4), d2 = parse_datum(datum2);
  json all = json::array();
  bool ok = true;
  for (int k = 1; k <= 10; ++k) {
    if (only && k != only) continue;
    for (const auto& xi : block_cocycles(k)) {
      Block b = make_block(k, d4, d2, xi);
      json j;
      j["block"] = k;
      j["xi"] = xi;
      j["jacobian_dim"] = b.species.jacobian().dim();
      j["clannish_dim"] = b.clannish.algebra().dim();
      auto cond = check_clannish_conditions(b.clannish);
      j["clannish_conditions"] = cond;
      bool pass = cond.empty();
      bool has_p1 = false;
      for (auto kd : b.species.kinds) has_p1 |= kd == VertexKind::Pending1 && b.species.mode == SurfaceMode::Arbitrary;
      if (!has_p1) {
        auto iso = block_iso(b.species, b.clannish);
        j["isomorphism"] = iso.failures;
        pass &= iso.ok();
      }
      SamplePlan plan;
      plan.seed = seed;
      auto rep = verify_equivalence(b.species, b.clannish, plan);
      j["morita_ok"] = rep.ok();
      pass &= rep.ok();
      j["strings"] = enumerate_families(b.clannish, 1).size();
      j["bands"] = enumerate_bands(b.clannish, 8).size();
      j["ok"] = pass;
      ok &= pass;
      all.push_back(j);
      if (!out.json)
        std::cout << "block " << k << " xi=" << xi[0] << xi[1] << xi[2] << "  dims " << j["jacobian_dim"] << "/" << j["clannish_dim"]
                  << (has_p1 ? "  morita " : "  iso+morita ") << (pass ? "PASS" : "FAIL") << "\n";
    }
  }
  if (out.json) std::cout << json{{"schema_version", kSchemaVersion}, {"blocks", all}, {"ok", ok}}.dump(2) << "\n";
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobian algebras of species with potential and semilinear clannish algebras"};
  app.require_subcommand(1);

  Source s_build, s_dim, s_der, s_str, s_mod, s_ver, s_h1;
  Output o_build, o_dim, o_der, o_str, o_mod, o_ver, o_h1, o_blk;

  auto* build = app.add_subcommand("build", "print quiver, species, potential, derivatives and clannish presentation");
  add_source(build, s_build);
  add_output(build, o_build, true);

  auto* dim = app.add_subcommand("dim", "dimensions of both algebras");
  add_source(dim, s_dim);
  add_output(dim, o_dim);

  auto* der = app.add_subcommand("derivatives", "cyclic derivatives of the potential");
  add_source(der, s_der);
  add_output(der, o_der);

  size_t n = 2, period = 8;
  auto* str = app.add_subcommand("strings", "strings and bands of the clannish algebra");
  add_source(str, s_str);
  add_output(str, o_str);
  str->add_option("--n", n, "family parameter bound");
  str->add_option("--period", period, "band period bound");

  std::string side = "clannish", rep_file, word, functor;
  auto* mod = app.add_subcommand("module", "validate or build a representation");
  add_source(mod, s_mod);
  add_output(mod, o_mod);
  mod->add_option("--side", side, "jacobian or clannish")->check(CLI::IsMember({"jacobian", "clannish"}));
  mod->add_option("--file", rep_file, "representation JSON");
  mod->add_option("--string", word, "string word, e.g. 'g^-1 s3* b^-1 s2* b s3* g'");
  mod->add_option("--apply", functor, "apply psi or phi")->check(CLI::IsMember({"psi", "phi"}));
  Source s_val;
  Output o_val;
  std::string val_file, val_side = "clannish";
  auto* val = app.add_subcommand("validate", "validate a representation file");
  val->add_option("representation", val_file, "representation JSON")->required();
  add_source(val, s_val, false);
  add_output(val, o_val);
  val->add_option("--side", val_side, "jacobian or clannish")->check(CLI::IsMember({"jacobian", "clannish"}));

  SamplePlan plan;
  auto* ver = app.add_subcommand("verify", "sampled check of the Morita equivalence");
  add_source(ver, s_ver);
  add_output(ver, o_ver);
  ver->add_option("--seed", plan.seed);
  ver->add_option("--random", plan.random, "random modules per side");
  ver->add_option("--max-dim", plan.max_dim, "bound on vertex dimensions of random modules");
  ver->add_option("--string-len", plan.string_len, "bound on string length");
  ver->add_option("--hom-pairs", plan.hom_pairs, "hom checks per side");

  auto* h1c = app.add_subcommand("h1", "first cohomology of the cochain complex");
  add_source(h1c, s_h1);
  add_output(h1c, o_h1);

  std::string d4 = "F5:4:2:2", d2 = "F5:2:2";
  int only = 0;
  uint64_t seed = 1;
  auto* blk = app.add_subcommand("blockcheck", "all checks on the building blocks");
  blk->add_option("--block", only)->check(CLI::Range(1, 10));
  blk->add_option("--datum4", d4, "degree-4 datum for blocks 1-7");
  blk->add_option("--datum2", d2, "degree-2 datum for blocks 8-10");
  blk->add_option("--seed", seed);
  add_output(blk, o_blk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  try {
    if (*build) return cmd_build(s_build, o_build);
    if (*dim) return cmd_dim(s_dim, o_dim);
    if (*der) return cmd_derivatives(s_der, o_der);
    if (*str) return cmd_strings(s_str, o_str, n, period);
    if (*mod) return cmd_module(s_mod, o_mod, side, rep_file, word, functor);
    if (*ver) return cmd_verify(s_ver, o_ver, plan);
    if (*h1c) return cmd_h1(s_h1, o_h1);
    if (*val) return cmd_module(s_val, o_val, val_side, val_file, "", "");
    return cmd_blockcheck(d4, d2, only, o_blk, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
