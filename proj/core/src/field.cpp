#include "thetareg/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#ifndef THETAREG_DATA_DIR
#define THETAREG_DATA_DIR ""
#endif

namespace thetareg {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::vector<i64> parse_i64_list(const std::string& s) {
  std::vector<i64> out;
  for (const auto& t : split(s, ','))
    if (!t.empty()) out.push_back(std::stoll(t));
  return out;
}

// Exact rational polynomial arithmetic modulo the monic integer P.
using QPoly = std::vector<mpq_class>;

QPoly qreduce(QPoly a, const std::vector<i64>& P) {
  int n = (int)P.size() - 1;
  for (int d = (int)a.size() - 1; d >= n; --d) {
    mpq_class c = a[d];
    if (c == 0) continue;
    a[d] = 0;
    for (int i = 0; i < n; ++i) a[d - n + i] -= c * P[i];
  }
  a.resize(n, mpq_class(0));
  return a;
}

QPoly qmul(const QPoly& a, const QPoly& b, const std::vector<i64>& P) {
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return qreduce(std::move(r), P);
}

// f(g(x)) mod P.
QPoly qcompose(const QPoly& f, const QPoly& g, const std::vector<i64>& P) {
  int n = (int)P.size() - 1;
  QPoly acc(n, mpq_class(0));
  for (int i = n - 1; i >= 0; --i) {
    acc = qmul(acc, g, P);
    acc[0] += f[i];
  }
  return acc;
}

bool qeq(const QPoly& a, const QPoly& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

QPoly parse_rational_vec(const std::string& nums, const std::string& den, int n) {
  auto nv = parse_i64_list(nums);
  i64 d = den.empty() ? 1 : std::stoll(den);
  if (d == 0) throw ConfigError("automorphism denominator is zero");
  QPoly out(n, mpq_class(0));
  for (size_t i = 0; i < nv.size() && i < (size_t)n; ++i) {
    out[i] = mpq_class(nv[i], d);
    out[i].canonicalize();
  }
  return out;
}

struct RawSection {
  std::string head;
  std::map<std::string, std::string> kv;
  std::vector<std::string> lines;  // non key=value payload lines
};

}  // namespace

void AlgebraicNumber::normalize() {
  if (den == 0) throw ConfigError("algebraic number with zero denominator");
  if (den < 0) {
    den = -den;
    for (auto& c : num) c = -c;
  }
  i64 g = den;
  for (i64 c : num) g = (i64)gcd_u64((u64)std::llabs(c), (u64)std::llabs(g));
  if (g > 1) {
    den /= g;
    for (auto& c : num) c /= g;
  }
}

bool AlgebraicNumber::is_rational() const {
  for (size_t i = 1; i < num.size(); ++i)
    if (num[i]) return false;
  return true;
}

std::string AlgebraicNumber::str() const {
  std::string s;
  for (size_t i = 0; i < num.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(num[i]);
  }
  if (den != 1) s += "/" + std::to_string(den);
  return s;
}

AlgebraicNumber parse_algebraic(const std::string& text, int n) {
  AlgebraicNumber a;
  std::string body = text;
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    a.den = std::stoll(text.substr(slash + 1));
    body = text.substr(0, slash);
  }
  a.num = parse_i64_list(body);
  if ((int)a.num.size() > n)
    throw ConfigError("coefficient vector longer than the field degree");
  a.num.resize(n, 0);
  a.normalize();
  return a;
}

mpz_class FieldSpec::auto_den() const {
  mpz_class l = 1;
  for (const auto& A : autos)
    for (const auto& q : A) l = lcm(l, mpz_class(q.get_den()));
  return l;
}

std::vector<u64> FieldSpec::auto_mod(int nu, u64 modulus) const {
  const auto& A = autos.at(nu);
  std::vector<u64> out(n);
  for (int i = 0; i < n; ++i) {
    mpz_class numv = A[i].get_num(), denv = A[i].get_den();
    mpz_class mm((unsigned long)modulus);
    mpz_class nr = numv % mm;
    if (nr < 0) nr += mm;
    mpz_class dr = denv % mm;
    u64 dmod = dr.get_ui();
    u64 nmod = nr.get_ui();
    out[i] = mulmod(nmod, invmod(dmod, modulus), modulus);
  }
  return out;
}

namespace {

GroupData parse_group_section(const RawSection& sec) {
  GroupData G;
  G.label = sec.kv.count("label") ? sec.kv.at("label") : "custom";
  auto elems = split(sec.kv.at("elements"), ',');
  G.n = (int)elems.size();
  G.elem = elems;
  G.mul.assign(G.n, std::vector<int>(G.n, -1));
  auto rows = split(sec.kv.at("table"), ';');
  if ((int)rows.size() != G.n) throw ConfigError("group table must have n rows");
  for (int a = 0; a < G.n; ++a) {
    auto cells = split(rows[a], ',');
    if ((int)cells.size() != G.n) throw ConfigError("group table row has wrong length");
    for (int b = 0; b < G.n; ++b) G.mul[a][b] = G.elem_index(cells[b]);
  }
  G.id_ = -1;
  for (int e = 0; e < G.n; ++e) {
    bool ident = true;
    for (int a = 0; a < G.n; ++a)
      if (G.mul[e][a] != a || G.mul[a][e] != a) { ident = false; break; }
    if (ident) { G.id_ = e; break; }
  }
  if (G.id_ < 0) throw ConfigError("group table has no identity");
  G.inv.assign(G.n, -1);
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b)
      if (G.mul[a][b] == G.id_) G.inv[a] = b;
  for (const auto& g : split(sec.kv.at("generators"), ','))
    G.generators.push_back(G.elem_index(g));
  G.exponent = 1;
  for (int a = 0; a < G.n; ++a) {
    u64 o = (u64)G.elem_order(a);
    G.exponent = G.exponent / gcd_u64(G.exponent, o) * o;
  }
  // characters: payload lines "char degree=<k> order=<d> exps=..|matrices=..",
  // then "rat <name> = i,j,..." grouping lines.
  for (const auto& line : sec.lines) {
    if (line.rfind("char", 0) == 0) {
      AbsIrredChar ch;
      std::map<std::string, std::string> kv;
      std::stringstream ss(line.substr(4));
      std::string tok;
      while (ss >> tok) {
        auto eq = tok.find('=');
        if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      ch.degree = kv.count("degree") ? std::stoi(kv["degree"]) : 1;
      ch.d = kv.count("order") ? std::stoull(kv["order"]) : 1;
      if (ch.degree == 1) {
        for (i64 v : parse_i64_list(kv.at("exps"))) ch.exp.push_back(smod(v, ch.d == 0 ? 1 : ch.d));
      } else {
        for (const auto& m : split(kv.at("matrices"), ';')) {
          ch.mat.push_back(parse_i64_list(m));
          const auto& M = ch.mat.back();
          if ((int)M.size() != ch.degree * ch.degree)
            throw ConfigError("character matrix has wrong size");
          i64 tr = 0;
          for (int i = 0; i < ch.degree; ++i) tr += M[i * ch.degree + i];
          ch.trace.push_back(tr);
        }
      }
      G.chars.push_back(ch);
    } else if (line.rfind("rat ", 0) == 0) {
      auto eq = line.find('=');
      RationalChar rc;
      rc.name = trim(line.substr(4, eq - 4));
      for (const auto& t : split(line.substr(eq + 1), ','))
        if (!t.empty()) rc.phis.push_back(std::stoi(t));
      rc.degree = G.chars.at(rc.phis[0]).degree;
      rc.d = G.chars.at(rc.phis[0]).d;
      G.rats.push_back(rc);
    }
  }
  G.validate();
  return G;
}

}  // namespace

FieldSpec load_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field spec file: " + path);
  std::vector<RawSection> sections(1);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unterminated section header");
      sections.push_back({trim(line.substr(1, line.size() - 2)), {}, {}});
      continue;
    }
    auto eq = line.find('=');
    bool charline = line.rfind("char", 0) == 0 || line.rfind("rat ", 0) == 0;
    if (eq != std::string::npos && !charline) {
      sections.back().kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    } else {
      sections.back().lines.push_back(line);
    }
  }

  const auto& top = sections[0];
  FieldSpec F;
  try {
    F.name = top.kv.count("name") ? top.kv.at("name") : std::filesystem::path(path).stem().string();
    F.n = std::stoi(top.kv.at("n"));
    F.poly = parse_i64_list(top.kv.at("poly"));
    if ((int)F.poly.size() != F.n + 1 || F.poly.back() != 1)
      throw ConfigError("poly must be monic of degree n (n+1 coefficients, lowest first)");
    if (top.kv.count("disc")) F.disc = mpz_class(top.kv.at("disc"));
    // group: builtin label or [group] section
    std::string glabel = top.kv.count("group") ? top.kv.at("group") : "";
    const RawSection* gsec = nullptr;
    for (const auto& s : sections)
      if (s.head == "group") gsec = &s;
    F.group = gsec ? parse_group_section(*gsec) : builtin_group(glabel);
    if (F.group.n != F.n && F.n != 1)
      throw ConfigError("group order must equal the field degree");
    if (top.kv.count("torsion"))
      for (const auto& t : split(top.kv.at("torsion"), ';'))
        if (!t.empty()) F.torsion.push_back(parse_algebraic(t, F.n));
    if (top.kv.count("sqrtm")) {
      F.sqrtm_m = std::stoll(top.kv.at("sqrtm"));
    }
    // automorphism sections
    std::map<std::string, QPoly> gen_autos;
    for (const auto& s : sections) {
      if (s.head.rfind("auto ", 0) != 0) continue;
      std::string label = trim(s.head.substr(5));
      gen_autos[label] =
          parse_rational_vec(s.kv.at("num"), s.kv.count("den") ? s.kv.at("den") : "1", F.n);
    }
    for (const auto& s : sections) {
      if (s.head == "sqrtm") {
        F.sqrtm = parse_rational_vec(s.kv.at("num"), s.kv.count("den") ? s.kv.at("den") : "1", F.n);
        if (s.kv.count("m")) F.sqrtm_m = std::stoll(s.kv.at("m"));
      }
    }

    // Derive the automorphism polynomial of every group element from the
    // generators: A_{a∘b} = A_b(A_a(x)) mod P, verified exhaustively below.
    const auto& G = F.group;
    QPoly X(F.n, mpq_class(0));
    if (F.n >= 2) X[1] = 1; else X[0] = 0;  // n=1: x == root of x, value 0
    std::vector<QPoly> autos(G.n);
    std::vector<bool> have(G.n, false);
    autos[G.identity()] = X;
    have[G.identity()] = true;
    for (int g : G.generators) {
      auto it = gen_autos.find(G.elem[g]);
      if (it == gen_autos.end())
        throw ConfigError("missing [auto " + G.elem[g] + "] section for generator");
      autos[g] = it->second;
      have[g] = true;
    }
    bool progress = true;
    while (progress) {
      progress = false;
      for (int g : G.generators)
        for (int h = 0; h < G.n; ++h) {
          if (!have[h]) continue;
          int gh = G.mul[g][h];
          if (have[gh]) continue;
          autos[gh] = qcompose(autos[h], autos[g], F.poly);
          have[gh] = true;
          progress = true;
        }
    }
    for (int g = 0; g < G.n; ++g)
      if (!have[g]) throw ConfigError("generators do not generate the group");
    // exact verification of the action
    for (int a = 0; a < G.n; ++a) {
      // P(A_a(x)) == 0 mod P
      QPoly pa(F.n + 1, mpq_class(0));
      for (int i = 0; i <= F.n; ++i) pa[i] = F.poly[i];
      QPoly img(F.n, mpq_class(0));
      for (int i = F.n; i >= 0; --i) {
        img = qmul(img, autos[a], F.poly);
        img[0] += F.poly[i];
      }
      for (const auto& q : img)
        if (q != 0) throw ConfigError("automorphism " + G.elem[a] + " does not fix P");
      for (int b = 0; b < G.n; ++b) {
        auto lhs = qcompose(autos[b], autos[a], F.poly);
        if (!qeq(lhs, autos[G.mul[a][b]]))
          throw ConfigError("automorphism table violates the group law at (" + G.elem[a] + "," +
                            G.elem[b] + ")");
      }
    }
    F.autos = std::move(autos);
    if (F.disc == 0) {
      // discriminant of P: (-1)^{n(n-1)/2} Res(P, P') (monic P)
      std::vector<mpz_class> dp(F.n);
      for (int i = 1; i <= F.n; ++i) dp[i - 1] = mpz_class(F.poly[i]) * i;
      mpz_class r = resultant_with_poly(F.poly, dp);
      if ((F.n * (F.n - 1) / 2) % 2 == 1) r = -r;
      F.disc = r;
    }
  } catch (const std::out_of_range&) {
    throw ConfigError("field spec " + path + ": missing required key");
  } catch (const std::invalid_argument& e) {
    throw ConfigError("field spec " + path + ": bad numeric value (" + std::string(e.what()) + ")");
  }
  return F;
}

FieldSpec resolve_field(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  std::vector<std::string> candidates{name_or_path, name_or_path + ".field"};
  if (const char* dir = std::getenv("THETA_REG_FIELDS")) {
    candidates.push_back(std::string(dir) + "/" + name_or_path + ".field");
    candidates.push_back(std::string(dir) + "/" + name_or_path);
  }
  std::string builtin = THETAREG_DATA_DIR;
  if (!builtin.empty()) {
    candidates.push_back(builtin + "/fields/" + name_or_path + ".field");
  }
  candidates.push_back("data/fields/" + name_or_path + ".field");
  for (const auto& c : candidates)
    if (fs::exists(c) && fs::is_regular_file(c)) return load_field_file(c);
  throw ConfigError("field spec not found: " + name_or_path);
}

mpz_class resultant_with_poly(const std::vector<i64>& poly, const std::vector<mpz_class>& g) {
  // Sylvester matrix + fraction-free (Bareiss) elimination.
  int n = (int)poly.size() - 1;
  int m = -1;
  for (int i = (int)g.size() - 1; i >= 0; --i)
    if (g[i] != 0) { m = i; break; }
  if (m < 0) return 0;
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), n);
    return r;
  }
  int N = n + m;
  std::vector<std::vector<mpz_class>> M(N, std::vector<mpz_class>(N, 0));
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) M[r][r + n - i] = poly[i];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) M[m + r][r + m - i] = g[i];
  mpz_class denom = 1;
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < N; ++r)
        if (M[r][k] != 0) { swap = r; break; }
      if (swap < 0) return 0;
      std::swap(M[k], M[swap]);
      sign = -sign;
    }
    for (int r = k + 1; r < N; ++r) {
      for (int c = k + 1; c < N; ++c) {
        M[r][c] = (M[k][k] * M[r][c] - M[r][k] * M[k][c]) / denom;
      }
      M[r][k] = 0;
    }
    denom = M[k][k];
  }
  return sign > 0 ? M[N - 1][N - 1] : -M[N - 1][N - 1];
}

mpz_class numerator_norm(const FieldSpec& F, const AlgebraicNumber& a) {
  std::vector<mpz_class> g(a.num.size());
  for (size_t i = 0; i < a.num.size(); ++i) g[i] = a.num[i];
  return resultant_with_poly(F.poly, g);
}

std::vector<mpz_class> zmul_mod_poly(const std::vector<i64>& poly,
                                     const std::vector<mpz_class>& a,
                                     const std::vector<mpz_class>& b) {
  int n = (int)poly.size() - 1;
  std::vector<mpz_class> r(2 * n - 1, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i + j] += a[i] * b[j];
  for (int d = 2 * n - 2; d >= n; --d) {
    mpz_class c = r[d];
    if (c == 0) continue;
    r[d] = 0;
    for (int i = 0; i < n; ++i) r[d - n + i] -= c * poly[i];
  }
  r.resize(n);
  return r;
}

}  // namespace thetareg
