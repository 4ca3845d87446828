#pragma once

#include <extmukai/catalog.hpp>
#include <extmukai/hk_space.hpp>
#include <extmukai/isometry.hpp>
#include <extmukai/lattice.hpp>
#include <extmukai/verbitsky.hpp>

#include <cctype>
#include <string>
#include <vector>

#include <json.hpp>

namespace extmukai {

// std::map-backed: keys come out sorted, so dumps are canonical.
using Json = nlohmann::json;

inline Json to_json(const Rational& x) { return to_string(x); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw Error("expected a rational string or an integer");
}

inline Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline RatVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an array of rationals");
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline Json to_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected a matrix (array of rows)");
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw Error("ragged matrix");
  return RatMatrix::from_rows(rows, cols);
}

// ---------------------------------------------------------------- lattices

inline Json lattice_to_json(const QuadLattice& l) {
  Json j{{"name", l.name}, {"gram", to_json(l.gram)}};
  if (l.embedding) j["embedding"] = to_json(l.embedding->basis);
  return j;
}

// The embedding (columns = basis in ambient coordinates) needs the ambient gram to be meaningful;
// without it the ambient gram is recovered only when the embedding is square.
inline QuadLattice lattice_from_json(const Json& j, const std::optional<RatMatrix>& ambient_gram = std::nullopt) {
  if (!j.is_object() || !j.contains("gram")) throw Error("lattice file needs a \"gram\" entry");
  std::string name = j.value("name", std::string("L"));
  RatMatrix gram = matrix_from_json(j.at("gram"));
  if (!gram.square()) throw Error("gram matrix must be square");
  if (!j.contains("embedding")) return make_lattice(name, gram);
  RatMatrix b = matrix_from_json(j.at("embedding"));
  if (b.cols() != gram.rows()) throw Error("embedding has the wrong number of columns");
  RatMatrix amb;
  if (ambient_gram) {
    amb = *ambient_gram;
  } else if (b.square()) {
    RatMatrix bi = inverse(b);
    amb = bi.transpose() * gram * bi;
  } else {
    throw Error("embedded lattice needs its ambient gram");
  }
  QuadLattice l = lattice_with_basis(name, amb, b.columns());
  if (l.gram != gram) throw Error("gram does not match the embedding");
  return l;
}

// ---------------------------------------------------------------- isometries

inline Json isometry_to_json(const Isometry& g) {
  Json j{{"space", {{"name", g.space()->name}, {"gram", to_json(g.space()->gram)}}}, {"matrix", to_json(g.matrix())}};
  if (!g.word().empty()) j["word"] = g.word();
  return j;
}

inline Isometry isometry_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("space") || !j.contains("matrix")) throw Error("isometry file needs space and matrix");
  const Json& sp = j.at("space");
  SpacePtr s = make_space(sp.value("name", std::string("V")), matrix_from_json(sp.at("gram")), sp.value("mukai_layout", false));
  std::vector<std::string> word;
  if (j.contains("word")) word = j.at("word").get<std::vector<std::string>>();
  return Isometry(s, matrix_from_json(j.at("matrix")), word);
}

inline Json named_action_to_json(const NamedAction& a) {
  Json j = isometry_to_json(a.iso);
  j["key"] = a.key;
  j["provenance"] = a.provenance;
  j["epsilon"] = a.epsilon ? Json(*a.epsilon) : Json(nullptr);
  j["n"] = a.space.n();
  return j;
}

// ---------------------------------------------------------------- deformation types

inline Json dtype_to_json(const DeformationType& d) {
  return {{"family", to_string(d.family)},
          {"n", d.n},
          {"c_X", to_json(d.c_X)},
          {"r_X", to_json(d.r_X)},
          {"h2", {{"name", "H2"}, {"gram", to_json(d.h2_gram)}}}};
}

inline DeformationType dtype_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("n")) throw Error("deformation-type file needs family and n");
  std::string family = j.at("family").get<std::string>();
  int n = j.at("n").get<int>();
  if (family != "custom") {
    DeformationType d = deformation_type(family, n);
    if (d.n != n) throw Error(family + " has n = " + std::to_string(d.n));
    return d;
  }
  if (!j.contains("c_X") || !j.contains("r_X") || !j.contains("h2")) throw Error("custom type needs c_X, r_X and h2");
  return custom_type(n, rational_from_json(j.at("c_X")), rational_from_json(j.at("r_X")),
                     lattice_from_json(j.at("h2")).gram);
}

// ---------------------------------------------------------------- symmetric powers

inline Json sym_to_json(const SymElement& x) {
  Json pieces = Json::object();
  for (const auto& [deg, terms] : x.pieces()) {
    Json p = Json::object();
    for (const auto& [m, c] : terms) p[monomial_key(*x.space(), m)] = to_json(c);
    pieces[std::to_string(deg)] = p;
  }
  return {{"n", x.order()}, {"pieces", pieces}};
}

// ---------------------------------------------------------------- checks

inline Json checks_to_json(const std::vector<Check>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

// ---------------------------------------------------------------- human-readable vectors

// alpha + 5/4 beta, with H^2 basis vectors written h0, h1, ...
inline std::string format_ext_vector(const RatVector& v) {
  std::string out;
  auto term = [&](const Rational& c, const std::string& name) {
    if (sgn(c) == 0) return;
    Rational a = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (a != 1) out += to_string(a) + " ";
    out += name;
  };
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string name = i == 0 ? "α" : i + 1 == v.size() ? "β" : "h" + std::to_string(i - 1);
    term(v[i], name);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- expressions

namespace detail {

inline std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && ws(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline RatVector named_basis_vector(const ExtMukaiSpace& s, const std::string& name) {
  if (name == "alpha") return s.alpha();
  if (name == "beta") return s.beta();
  if (name == "delta") return s.delta();
  if (name == "alpha~") return k3n_lattices(s).alpha_t;
  if (name == "delta~") return k3n_lattices(s).delta_t;
  if (name.size() > 1 && name[0] == 'h' && std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
    std::size_t i = std::stoul(name.substr(1));
    if (i >= s.b2()) throw Error("H^2 index out of range: " + name);
    return s.h2_basis(i);
  }
  throw Error("unknown basis name '" + name + "'");
}

}  // namespace detail

// Ambient vector from either a comma list of coordinates or a sum of terms like
// "alpha~ + beta", "delta/3", "-2*h0 + 1/2*beta". Names: alpha, beta, delta, alpha~, delta~, h<i>.
inline RatVector parse_ext_vector(const ExtMukaiSpace& s, const std::string& text) {
  std::string t = detail::trim(text);
  if (t.empty()) throw Error("empty vector");
  if (t.find_first_of("abdh") == std::string::npos) {
    RatVector v;
    for (const auto& p : detail::split(t, ',')) v.push_back(parse_rational(p));
    if (v.size() != s.dim()) throw Error("expected " + std::to_string(s.dim()) + " ambient coordinates");
    return v;
  }
  RatVector v = zero_vector(s.dim());
  std::size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    while (i < t.size() && (t[i] == '+' || t[i] == '-' || t[i] == ' ')) {
      if (t[i] == '-') sign = -sign;
      ++i;
    }
    std::size_t j = i;
    while (j < t.size() && t[j] != '+' && !(t[j] == '-' && j > i)) ++j;
    std::string term = detail::trim(t.substr(i, j - i));
    if (term.empty()) throw Error("malformed vector expression '" + text + "'");
    Rational coeff = sign;
    std::string name = term;
    if (auto star = term.find('*'); star != std::string::npos) {
      coeff *= parse_rational(term.substr(0, star));
      name = detail::trim(term.substr(star + 1));
    }
    if (auto slash = name.find('/'); slash != std::string::npos) {
      coeff /= parse_rational(name.substr(slash + 1));
      name = detail::trim(name.substr(0, slash));
    }
    v = v + coeff * detail::named_basis_vector(s, name);
    i = j;
  }
  return v;
}

// H^2 coordinates: "0" (the zero class), a comma list, or an expression whose alpha/beta parts vanish.
inline RatVector parse_h2_class(const ExtMukaiSpace& s, const std::string& text) {
  std::string t = detail::trim(text);
  if (t == "0") return zero_vector(s.b2());
  if (t.find_first_of("abdh") == std::string::npos) {
    RatVector v;
    for (const auto& p : detail::split(t, ',')) v.push_back(parse_rational(p));
    if (v.size() != s.b2()) throw Error("expected " + std::to_string(s.b2()) + " H^2 coordinates");
    return v;
  }
  RatVector a = parse_ext_vector(s, t);
  if (sgn(a.front()) != 0 || sgn(a.back()) != 0) throw Error("class is not in H^2");
  return s.h2_part(a);
}

// id | shift | bfield:<class> | reflection:<vector> | transvection:<e>;<a> | <catalog key>
inline Isometry parse_isometry_spec(const ExtMukaiSpace& s, const std::string& spec) {
  std::string t = detail::trim(spec);
  auto colon = t.find(':');
  std::string head = t.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : t.substr(colon + 1);
  if (head == "id") return identity_isometry(s.space);
  if (head == "shift" || head == "-id") return minus_identity(s.space);
  if (head == "bfield") return b_field(s.space, s.h2(parse_h2_class(s, arg)));
  if (head == "reflection") return reflection(s.space, parse_ext_vector(s, arg));
  if (head == "transvection") {
    auto parts = detail::split(arg, ';');
    if (parts.size() != 2) throw Error("transvection needs e;a");
    return eichler_transvection(s.space, parse_ext_vector(s, parts[0]), parse_ext_vector(s, parts[1]));
  }
  if (head == "tensor_line_bundle") return tensor_line_bundle_action(s, arg.empty() ? zero_vector(s.b2()) : parse_h2_class(s, arg)).iso;
  if (head == "sign_equivalence") return sign_equivalence_action(s).iso;
  if (head == "spherical_P") return spherical_P_action(s).iso;
  if (head == "fm_ext1") return fm_ext1_action(s).iso;
  if (head == "horja_EZ") return horja_EZ_action(s).iso;
  throw Error("unknown isometry spec '" + spec + "'");
}

}  // namespace extmukai
