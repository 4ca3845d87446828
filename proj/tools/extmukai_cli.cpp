#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "extmukai/io.hpp"
#include "extmukai/moduli.hpp"
#include "extmukai/verify.hpp"

namespace {

using namespace extmukai;

enum Exit { kPass = 0, kFail = 1, kInput = 2 };

struct InputError : Error {
  using Error::Error;
};

struct Report {
  Json command;
  std::vector<Check> checks;
  Json result = Json::object();
};

struct Globals {
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON argument: ") + e.what());
  }
}

void print_text(const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_text(v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_string()) {
    std::cout << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    std::cout << prefix << ": " << j.dump() << "\n";
  }
}

int emit(const Globals& g, const Report& r) {
  bool pass = all_pass(r.checks);
  if (g.format == "text") {
    for (const auto& c : r.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " -- " + c.detail) << "\n";
    print_text(r.result, "");
    std::cout << (pass ? "pass" : "fail") << "\n";
  } else {
    Json out{{"command", r.command}, {"checks", checks_to_json(r.checks)}, {"result", r.result}, {"pass", pass}};
    std::cout << out.dump(2) << "\n";
  }
  return pass ? kPass : kFail;
}

int emit_error(const Globals& g, const Json& command, const std::string& kind, const std::string& message) {
  if (g.format == "text") {
    std::cout << "error (" << kind << "): " << message << "\n";
  } else {
    Json out{{"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
    std::cout << out.dump(2) << "\n";
  }
  return kInput;
}

// ---------------------------------------------------------------- shared options

struct SpaceOpts {
  std::string family = "K3n";
  int n = 2;
  std::string dtype_file;

  void add(CLI::App* app) {
    app->add_option("--family", family, "K3n | Kumn | OG10 | OG6")->check(CLI::IsMember({"K3n", "Kumn", "OG10", "OG6"}));
    app->add_option("--n", n, "half the complex dimension");
    app->add_option("--dtype", dtype_file, "deformation-type JSON file (overrides --family/--n)");
  }
  ExtMukaiSpace build() const {
    if (!dtype_file.empty()) return make_ext_space(dtype_from_json(read_json_file(dtype_file)));
    if (family == "OG10") return make_ext_space(og10_type());
    if (family == "OG6") return make_ext_space(og6_type());
    return make_ext_space(deformation_type(family, n));
  }
};

struct IsoOpts {
  std::string spec;
  std::string file;

  void add(CLI::App* app) {
    app->add_option("--iso", spec, "id | shift | bfield:<class> | reflection:<vector> | transvection:<e>;<a> | catalog key");
    app->add_option("--iso-file", file, "isometry JSON file");
  }
  Isometry build(const ExtMukaiSpace& s) const {
    if (!file.empty()) {
      Isometry g = isometry_from_json(read_json_file(file));
      if (g.space()->gram != s.gram()) throw InputError("isometry file is on a different space");
      return Isometry(s.space, g.matrix(), g.word());
    }
    if (spec.empty()) throw InputError("--iso or --iso-file is required");
    return parse_isometry_spec(s, spec);
  }
};

QuadLattice named_lattice(const ExtMukaiSpace& s, const std::string& name) {
  if (name == "integral") return integral_lattice(s);
  if (name.rfind("scaled:", 0) == 0) return scaled_lattice(s, std::stol(name.substr(7)));
  if (name == "lambda" || name == "lambda_s" || name == "lambda_g" || name == "lambda_lb") {
    K3nLattices l = k3n_lattices(s);
    if (name == "lambda") return l.lambda;
    if (name == "lambda_s") return l.lambda_s;
    if (name == "lambda_g") return l.lambda_g;
    return l.lambda_lb;
  }
  QuadLattice l = lattice_from_json(read_json_file(name), s.gram());
  if (l.ambient_dim() != s.dim()) throw InputError("lattice file is not embedded in this space");
  return l;
}

Json rational_row(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(Rational(x)));
  return a;
}

Json ext_vector_json(const RatVector& v) { return {{"coords", to_json(v)}, {"text", format_ext_vector(v)}}; }

// ---------------------------------------------------------------- moduli

Report moduli_report(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  Report r;
  Rational q = mukai_square(l, v);
  r.result["square"] = to_json(q);
  if (q >= -2) r.result["dimension"] = to_json(Rational(moduli_dimension(l, v)));
  QuadLattice ns = ns_of_moduli(l, v);
  r.result["ns_of_moduli"] = lattice_to_json(ns);
  Fineness f = fineness(l, v);
  auto w = unimodular_witness(l, v);
  r.result["fine"] = f.fine;
  r.result["obstruction_order"] = to_json(Rational(f.obstruction_order));
  r.result["witness"] = w ? to_json(*w) : Json(nullptr);
  DiscLemmaReport d = disc_lemma_check(l, v);
  r.result["disc_lemma"] = {{"det_ns", to_json(d.det_ns)},
                            {"det_l", to_json(d.det_l)},
                            {"k_order", d.k_order ? to_json(Rational(*d.k_order)) : Json(nullptr)}};
  PartnerInvariants p = partner_invariants(l, v);
  Json inv{{"square", to_json(p.square)}, {"obstruction_order", to_json(Rational(p.obstruction_order))}};
  if (p.ns_disc) {
    Json counts = Json::object();
    for (const auto& [val, c] : p.ns_disc->q_counts) counts[to_string(val)] = c;
    inv["ns_disc"] = {{"cyclic_orders", rational_row(p.ns_disc->cyclic_orders)}, {"q_counts", counts}};
  } else {
    inv["ns_disc"] = nullptr;
  }
  r.result["partner_invariants"] = inv;
  bool agree = f.fine == w.has_value() && (!d.k_order || f.fine == d.k_equals_square);
  r.checks.push_back({"fineness paths agree", agree, ""});
  if (d.k_order) {
    r.checks.push_back({"det NS(M) = |K|^2 det L / <v,v>", d.formula_holds, ""});
    r.checks.push_back({"fine <=> |K| = |<v,v>| <=> det NS(M) = <v,v> det L", d.equivalence_holds, ""});
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  Json command = Json::array();
  for (int i = 1; i < argc; ++i) command.push_back(argv[i]);

  CLI::App app{"Exact computations on extended Mukai lattices"};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "json | text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.fallthrough();

  // vector
  SpaceOpts vec_space;
  std::string vec_lambda = "0";
  bool vec_point = false;
  auto* vec = app.add_subcommand("vector", "extended Mukai vector of a line bundle or a point");
  vec_space.add(vec);
  vec->add_option("--lambda", vec_lambda, "class in H^2: 0, comma list, or expression like h0 + delta");
  vec->add_flag("--point", vec_point, "skyscraper sheaf instead of a line bundle");

  // act
  SpaceOpts act_space;
  IsoOpts act_iso;
  std::string act_vector;
  auto* act = app.add_subcommand("act", "apply an isometry to a vector");
  act_space.add(act);
  act_iso.add(act);
  act->add_option("--vector", act_vector, "ambient vector: comma list or expression")->required();

  // lattice-check
  SpaceOpts lc_space;
  IsoOpts lc_iso;
  std::string lc_lattice = "lambda";
  auto* lc = app.add_subcommand("lattice-check", "does an isometry preserve a lattice");
  lc_space.add(lc);
  lc_iso.add(lc);
  lc->add_option("--lattice", lc_lattice, "lambda | lambda_s | lambda_g | lambda_lb | integral | scaled:<k> | lattice file");

  // isometry-info
  SpaceOpts info_space;
  IsoOpts info_iso;
  auto* info = app.add_subcommand("isometry-info", "determinant, spinor norm, reflection length, lattice behaviour");
  info_space.add(info);
  info_iso.add(info);

  // transport
  int tr_n = 3;
  std::string tr_v, tr_w;
  auto* tr = app.add_subcommand("transport", "Eichler transvection word between two Lambda-vectors (K3n)");
  tr->add_option("--n", tr_n);
  tr->add_option("--v", tr_v)->required();
  tr->add_option("--w", tr_w)->required();

  // group
  int grp_n = 2, grp_depth = 3;
  std::vector<std::string> grp_gens;
  auto* grp = app.add_subcommand("group", "bounded enumeration of the group generated by isometries (K3n)");
  grp->add_option("--n", grp_n);
  grp->add_option("--gen", grp_gens, "isometry spec, repeatable")->required();
  grp->add_option("--depth", grp_depth);

  // todd
  SpaceOpts todd_space;
  std::string todd_which = "sqrt";
  bool todd_bar = false;
  auto* todd = app.add_subcommand("todd", "preimage of sqrt(td) or td in Sym^n");
  todd_space.add(todd);
  todd->add_option("--which", todd_which)->check(CLI::IsMember({"sqrt", "full"}));
  todd->add_flag("--bar", todd_bar, "project to the Verbitsky component");

  // chi
  SpaceOpts chi_space;
  std::string chi_lambda = "0";
  auto* chi = app.add_subcommand("chi", "Euler characteristic of a line bundle");
  chi_space.add(chi);
  chi->add_option("--lambda", chi_lambda);

  // integrate
  SpaceOpts int_space;
  std::vector<std::string> int_omegas;
  auto* integ = app.add_subcommand("integrate", "integral of a product of 2n classes in H^2");
  int_space.add(integ);
  integ->add_option("--omega", int_omegas, "class in H^2, repeatable (2n times)")->required();

  // moduli
  std::string mod_input, mod_ns, mod_v;
  auto* mod = app.add_subcommand("moduli", "moduli of sheaves on a K3 surface: v-perp, fineness, discriminant lemma");
  mod->add_option("--input", mod_input, "JSON file {\"ns\": lattice, \"v\": [r, c..., s]}");
  mod->add_option("--ns", mod_ns, "NS gram as JSON, e.g. [[2]]");
  mod->add_option("--v", mod_v, "Mukai vector r,c...,s");

  // catalog
  auto* cat = app.add_subcommand("catalog", "isometries induced by derived equivalences");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "catalog keys");
  int cat_n = 2, cat_g = 2;
  std::string cat_key, cat_lambda;
  auto* cat_get = cat->add_subcommand("get", "one catalog entry");
  cat_get->add_option("key", cat_key)->required();
  cat_get->add_option("--n", cat_n);
  cat_get->add_option("--g", cat_g, "genus for poincare");
  cat_get->add_option("--lambda", cat_lambda, "H^2 class for tensor_line_bundle");

  // verify
  std::string ver_suite;
  int ver_n = 0, ver_rank = 3;
  auto* ver = app.add_subcommand("verify", "run an acceptance suite");
  std::vector<std::string> suite_names{"all"};
  for (const auto& s : suites()) suite_names.push_back(s.name);
  ver->add_option("suite", ver_suite)->required()->check(CLI::IsMember(suite_names));
  ver->add_option("--n", ver_n, "restrict to one n");
  ver->add_option("--h2-rank", ver_rank, "H^2 rank of the custom family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(g, command, "usage", e.what());
  }

  try {
    Report r;
    if (*vec) {
      ExtMukaiSpace s = vec_space.build();
      ExtVector v = vec_point ? ext_vector_point(s) : ext_vector_line_bundle(s, parse_h2_class(s, vec_lambda));
      r.result = ext_vector_json(v.coords);
      r.result["tag"] = to_string(v.tag);
      r.result["square"] = to_json(s.square(v.coords));
      if (vec_point) {
        r.checks.push_back({"isotropic", sgn(s.square(v.coords)) == 0, ""});
      } else {
        r.checks.push_back({"square = -2 r_X", s.square(v.coords) == -2 * s.dtype.r_X, "r_X = " + to_string(s.dtype.r_X)});
      }
    } else if (*act) {
      ExtMukaiSpace s = act_space.build();
      Isometry m = act_iso.build(s);
      RatVector x = parse_ext_vector(s, act_vector);
      r.result["input"] = ext_vector_json(x);
      r.result["image"] = ext_vector_json(m(x));
      r.checks.push_back({"square preserved", s.square(m(x)) == s.square(x), ""});
    } else if (*lc) {
      ExtMukaiSpace s = lc_space.build();
      Isometry m = lc_iso.build(s);
      QuadLattice l = named_lattice(s, lc_lattice);
      PreservationReport p = lattice_preservation(m, l);
      r.result["lattice"] = l.name;
      r.result["preserved"] = p.preserved;
      if (!p.preserved) {
        const Isometry& map = p.direction == "forward" ? m : m.inverse();
        r.result["witness"] = {{"vector", ext_vector_json(*p.witness)},
                               {"direction", p.direction},
                               {"image", ext_vector_json(map(*p.witness))}};
      }
      r.checks.push_back({"preserves " + l.name, p.preserved, p.preserved ? "" : "witness " + to_string(*p.witness)});
    } else if (*info) {
      ExtMukaiSpace s = info_space.build();
      Isometry m = info_iso.build(s);
      r.result["isometry"] = isometry_to_json(m);
      r.result["determinant"] = to_json(m.determinant());
      r.result["spinor_norm"] = spinor_norm(m);
      r.result["reflections"] = static_cast<int>(cartan_dieudonne(m).size());
      if (s.dtype.family == Family::K3n && s.n() >= 2) {
        K3nLattices l = k3n_lattices(s);
        bool keeps = preserves_lattice(m, l.lambda);
        r.result["preserves_lambda"] = keeps;
        r.result["disc_action"] = keeps ? to_string(disc_action(m, l.lambda).kind) : "n/a";
        HatAutReport h = in_hat_aut_plus(m, s);
        r.result["in_hat_aut_plus"] = h.member;
        r.result["hat_aut_failures"] = h.reasons;
      }
    } else if (*tr) {
      ExtMukaiSpace s = make_ext_space(k3n_type(tr_n));
      K3nLattices l = k3n_lattices(s);
      RatVector v = parse_ext_vector(s, tr_v), w = parse_ext_vector(s, tr_w);
      TransportResult t = eichler_transport(s.space, l.lambda, l.plane0, l.plane1, v, w);
      r.result["found"] = t.found;
      r.result["reason"] = t.reason;
      Json word = Json::array();
      for (const auto& x : t.word) word.push_back(x.str());
      r.result["word"] = word;
      r.checks.push_back({"connected by transvections", t.found, t.reason});
      if (t.found) r.checks.push_back({"word maps v to w", word_isometry(s.space, t.word)(v) == w, ""});
    } else if (*grp) {
      ExtMukaiSpace s = make_ext_space(k3n_type(grp_n));
      std::vector<Isometry> gens;
      for (const auto& spec : grp_gens) gens.push_back(parse_isometry_spec(s, spec));
      std::vector<Isometry> elems = generate_bounded(gens, grp_depth);
      K3nLattices l = k3n_lattices(s);
      long kept = 0;
      for (const auto& e : elems) kept += preserves_lattice(e, l.lambda);
      r.result["elements"] = static_cast<long>(elems.size());
      r.result["depth"] = grp_depth;
      r.checks.push_back({"every element preserves Lambda", kept == static_cast<long>(elems.size()),
                          std::to_string(kept) + "/" + std::to_string(elems.size())});
    } else if (*todd) {
      ExtMukaiSpace s = todd_space.build();
      bool sqrt = todd_which == "sqrt";
      SymElement x = sqrt ? sqrt_todd_preimage(s) : todd_preimage(s);
      if (todd_bar) x = project_T(x);
      Rational integral = pair_with_SH({}, x);
      r.result["element"] = sym_to_json(x);
      r.result["integral"] = to_json(integral);
      if (sqrt) {
        Rational want = s.dtype.c_X * rpow(s.dtype.r_X, s.n()) / rational_factorial(s.n());
        r.checks.push_back({"integral = c_X r_X^n / n!", integral == want, to_string(want)});
      } else if (s.dtype.family == Family::K3n || s.dtype.family == Family::Kumn) {
        r.checks.push_back({"chi(O_X) = n + 1", integral == s.n() + 1, ""});
      }
    } else if (*chi) {
      ExtMukaiSpace s = chi_space.build();
      RatVector lambda = parse_h2_class(s, chi_lambda);
      Rational x = euler_char_line_bundle(s, lambda);
      r.result["chi"] = to_json(x);
      Rational half = s.b(lambda, lambda) / 2;
      auto binom = [](Rational top, int k) {
        Rational b = 1;
        for (int j = 0; j < k; ++j) b *= (top - j) / Rational(j + 1);
        return b;
      };
      if (s.dtype.family == Family::K3n)
        r.checks.push_back({"chi = C(l/2 + n + 1, n)", x == binom(half + s.n() + 1, s.n()), ""});
      if (s.dtype.family == Family::Kumn)
        r.checks.push_back({"chi = (n+1) C(l/2 + n, n)", x == (s.n() + 1) * binom(half + s.n(), s.n()), ""});
    } else if (*integ) {
      ExtMukaiSpace s = int_space.build();
      if (static_cast<int>(int_omegas.size()) != 2 * s.n())
        throw InputError("need exactly 2n = " + std::to_string(2 * s.n()) + " classes");
      std::vector<RatVector> ws;
      for (const auto& w : int_omegas) ws.push_back(parse_h2_class(s, w));
      Rational a = integrate(s, ws), b = integrate_via_pairing(s, ws);
      r.result["integral"] = to_json(a);
      r.checks.push_back({"perfect matchings = Verbitsky pairing", a == b, to_string(b)});
    } else if (*mod) {
      Json input;
      if (!mod_input.empty()) {
        input = read_json_file(mod_input);
      } else {
        if (mod_ns.empty() || mod_v.empty()) throw InputError("moduli needs --input, or both --ns and --v");
        input = {{"ns", {{"name", "NS"}, {"gram", parse_json_text(mod_ns)}}}, {"v", parse_json_text("[" + mod_v + "]")}};
      }
      if (!input.contains("ns") || !input.contains("v")) throw InputError("moduli input needs \"ns\" and \"v\"");
      Json ns = input.at("ns").is_string() ? read_json_file(input.at("ns").get<std::string>()) : input.at("ns");
      AlgebraicMukaiLattice l = make_algebraic_mukai_lattice(lattice_from_json(ns).gram);
      MukaiVectorK3 v = mukai_from_list(vector_from_json(input.at("v")));
      r = moduli_report(l, v);
    } else if (*cat) {
      if (*cat_list) {
        r.result["keys"] = catalog_keys();
      } else {
        CatalogParams p;
        p.n = cat_n;
        p.g = cat_g;
        if (cat_key == "dn_transfer") {
          ExtMukaiSpace k3 = make_ext_space(k3n_type(1));
          p.k3_iso = Isometry(mukai_k3_space(), reflection(k3.space, k3.vec(1, zero_vector(22), 1)).matrix());
          r.result["k3_isometry"] = "s_(1,0,1)";
        }
        if (!cat_lambda.empty()) p.lambda = parse_h2_class(make_ext_space(k3n_type(cat_n)), cat_lambda);
        NamedAction a = catalog_action(cat_key, p);
        r.result["action"] = named_action_to_json(a);
      }
    } else if (*ver) {
      SuiteOptions o;
      o.seed = g.seed;
      if (ver_n > 0) o.n = ver_n;
      o.h2_rank = ver_rank;
      std::vector<const SuiteInfo*> run;
      if (ver_suite == "all") {
        run = acceptance_suites();
      } else {
        run.push_back(&find_suite(ver_suite));
      }
      Json per = Json::array();
      for (const SuiteInfo* s : run) {
        SuiteReport sr = s->run(o);
        for (const auto& c : sr.checks) r.checks.push_back({sr.suite + ": " + c.name, c.pass, c.detail});
        per.push_back({{"suite", sr.suite}, {"criterion", sr.criterion}, {"pass", sr.pass()}});
      }
      r.result["suites"] = per;
      r.result["seed"] = g.seed;
    }
    r.command = command;
    return emit(g, r);
  } catch (const InputError& e) {
    return emit_error(g, command, "input", e.what());
  } catch (const Error& e) {
    return emit_error(g, command, "input", e.what());
  } catch (const std::exception& e) {
    return emit_error(g, command, "input", e.what());
  }
}
