#pragma once

#include <algorithm>
#include <map>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsk/bigint.hpp"
#include "qsk/errors.hpp"
#include "qsk/family.hpp"
#include "qsk/kgraph.hpp"

// Words in u, u^{-1}, s_p, s_p^* acting on the basis of l^2(Z) by
// u: n -> n+1 and s_p: n -> pn. Every such word sends the basis vector at n
// to the one at f(n) for n in one coset m + hZ and kills the rest, with f
// affine; MonomialOp stores exactly that data.
namespace qsk::monocalc {

class MonomialOp {
 public:
  MonomialOp() = default;  // the zero operator

  // n -> (a n + b) / c on domain; a, c > 0 and c must divide a n + b on the
  // whole domain.
  static MonomialOp make(Integer a, Integer b, Integer c, const Congruence& domain) {
    ensure(a > 0 && c > 0 && domain.modulus > 0, "monomial with non-positive slope or modulus");
    const Integer g = gcd(a, c);
    ensure(b % g == 0, "monomial is not integer valued");
    MonomialOp x;
    x.zero_ = false;
    x.a_ = a / g;
    x.b_ = b / g;
    x.c_ = c / g;
    x.dom_ = {mod_floor(domain.residue, domain.modulus), domain.modulus};
    ensure((x.a_ * x.dom_.residue + x.b_) % x.c_ == 0 && (x.a_ * x.dom_.modulus) % x.c_ == 0,
           "monomial is not integer valued on its domain");
    return x;
  }

  static MonomialOp identity_on(const Congruence& d) { return make(1, 0, 1, d); }
  static MonomialOp identity() { return identity_on({0, 1}); }

  bool is_zero() const { return zero_; }
  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Congruence& domain() const { return dom_; }

  std::optional<Integer> apply(const Integer& n) const {
    if (zero_ || mod_floor(n - dom_.residue, dom_.modulus) != 0) return std::nullopt;
    return (a_ * n + b_) / c_;
  }

  // f(m + hZ) = f(m) + (a h / c) Z.
  Congruence image() const {
    ensure(!zero_, "image of the zero operator");
    const Integer step = a_ * dom_.modulus / c_;
    return {mod_floor((a_ * dom_.residue + b_) / c_, step), step};
  }

  friend bool operator==(const MonomialOp&, const MonomialOp&) = default;

  std::string to_string() const {
    if (zero_) return "0";
    return "n -> (" + a_.str() + "n + " + b_.str() + ")/" + c_.str() + " on " +
           dom_.residue.str() + "+" + dom_.modulus.str() + "Z";
  }

 private:
  bool zero_ = true;
  Integer a_ = 1;
  Integer b_ = 0;
  Integer c_ = 1;
  Congruence dom_{0, 1};
};

enum class Symbol { u, u_inverse, s, s_star };

inline MonomialOp generator(Symbol sym, const PrimeFamily& fam, std::int64_t p = 0) {
  if (sym == Symbol::s || sym == Symbol::s_star)
    require(fam.contains(p), "generator: " + std::to_string(p) + " is not in S");
  switch (sym) {
    case Symbol::u: return MonomialOp::make(1, 1, 1, {0, 1});
    case Symbol::u_inverse: return MonomialOp::make(1, -1, 1, {0, 1});
    case Symbol::s: return MonomialOp::make(p, 0, 1, {0, 1});
    case Symbol::s_star: return MonomialOp::make(1, 0, p, {0, p});
  }
  return {};
}

// u^k.
inline MonomialOp u_pow(const Integer& k) { return MonomialOp::make(1, k, 1, {0, 1}); }
// s_h for h in H+ (or any positive h: the isometry n -> hn).
inline MonomialOp s_of(const Integer& h) { return MonomialOp::make(h, 0, 1, {0, 1}); }
inline MonomialOp s_star_of(const Integer& h) { return MonomialOp::make(1, 0, h, {0, h}); }

// x o y: apply y, then x. The domain is the y-preimage of x.domain
// intersected with the image of y.
inline MonomialOp compose(const MonomialOp& x, const MonomialOp& y) {
  if (x.is_zero() || y.is_zero()) return {};
  const Congruence img = y.image();
  auto meet = crt(img, x.domain());
  if (!meet) return {};
  const Integer n0 = (y.c() * meet->residue - y.b()) / y.a();
  ensure(y.apply(n0) == meet->residue, "preimage computation failed");
  const Integer mod = y.domain().modulus * (meet->modulus / img.modulus);
  return MonomialOp::make(x.a() * y.a(), x.a() * y.b() + x.b() * y.c(), x.c() * y.c(),
                          {n0, mod});
}

// x_1 x_2 ... x_n as an operator product.
inline MonomialOp product(std::initializer_list<MonomialOp> xs) {
  MonomialOp r = MonomialOp::identity();
  for (const auto& x : xs) r = compose(r, x);
  return r;
}

// The inverse partial map (the Hilbert space adjoint).
inline MonomialOp adjoint(const MonomialOp& x) {
  if (x.is_zero()) return {};
  return MonomialOp::make(x.c(), -x.b(), x.a(), x.image());
}

// Projection onto span{xi_n : n mod L in residues}. Canonical: L minimal.
class CosetSet {
 public:
  CosetSet() = default;  // empty

  static CosetSet make(Integer modulus, std::vector<Integer> residues) {
    require(modulus >= 1, "coset set modulus must be positive");
    CosetSet s;
    s.l_ = std::move(modulus);
    for (auto& r : residues) r = mod_floor(r, s.l_);
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    s.res_ = std::move(residues);
    s.canonicalize();
    return s;
  }

  static CosetSet of(const Congruence& c) { return make(c.modulus, {c.residue}); }
  static CosetSet all() { return make(1, {0}); }

  const Integer& modulus() const { return l_; }
  const std::vector<Integer>& residues() const { return res_; }
  bool empty() const { return res_.empty(); }

  bool contains(const Integer& n) const {
    return std::binary_search(res_.begin(), res_.end(), mod_floor(n, l_));
  }

  // Residues at a multiple l of the modulus.
  std::vector<Integer> residues_at(const Integer& l) const {
    ensure(l % l_ == 0, "residues_at needs a multiple of the modulus");
    require(l <= 50'000'000, "coset modulus too large to expand");
    std::vector<Integer> out;
    for (Integer j = 0; j < l / l_; ++j)
      for (const auto& r : res_) out.push_back(r + j * l_);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const CosetSet&, const CosetSet&) = default;

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < res_.size(); ++i) out += (i ? "," : "") + res_[i].str();
    return out + "} mod " + l_.str();
  }

 private:
  void canonicalize() {
    if (res_.empty()) {
      l_ = 1;
      return;
    }
    std::vector<Integer> primes;
    Integer n = l_;
    for (Integer q = 2; q * q <= n; ++q) {
      if (n % q != 0) continue;
      primes.push_back(q);
      while (n % q == 0) n /= q;
    }
    if (n > 1) primes.push_back(n);
    // The periods of the set are closed under gcd, so dropping one prime at a
    // time reaches the minimal one.
    for (const auto& q : primes)
      while (l_ % q == 0) {
        const Integer sub = l_ / q;
        std::vector<Integer> reduced;
        for (const auto& r : res_) reduced.push_back(r % sub);
        std::sort(reduced.begin(), reduced.end());
        reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
        if (Integer(reduced.size()) * q != Integer(res_.size())) break;
        l_ = sub;
        res_ = std::move(reduced);
      }
  }

  Integer l_ = 1;
  std::vector<Integer> res_;
};

inline CosetSet range_projection(const MonomialOp& x) {
  return x.is_zero() ? CosetSet{} : CosetSet::of(x.image());
}

inline CosetSet domain_projection(const MonomialOp& x) {
  return x.is_zero() ? CosetSet{} : CosetSet::of(x.domain());
}

inline Integer common_modulus(const std::vector<CosetSet>& ps) {
  Integer l = 1;
  for (const auto& p : ps) l = lcm(l, p.modulus());
  return l;
}

// Pairwise disjoint with union all of Z.
inline bool partition_check(const std::vector<CosetSet>& ps) {
  const Integer l = common_modulus(ps);
  std::set<Integer> seen;
  for (const auto& p : ps)
    for (auto& r : p.residues_at(l))
      if (!seen.insert(r).second) return false;
  return Integer(seen.size()) == l;
}

// Pairwise disjoint; the union is returned through `out`.
inline bool disjoint_union(const std::vector<CosetSet>& ps, CosetSet& out) {
  const Integer l = common_modulus(ps);
  std::set<Integer> seen;
  for (const auto& p : ps)
    for (auto& r : p.residues_at(l))
      if (!seen.insert(r).second) return false;
  out = CosetSet::make(l, {seen.begin(), seen.end()});
  return true;
}

// sum(terms) == rhs for monomials with pairwise disjoint domains: the
// domains must tile rhs's domain and every term must be rhs restricted to its
// own domain.
inline bool piecewise_sum_equals(const std::vector<MonomialOp>& terms, const MonomialOp& rhs) {
  std::vector<CosetSet> doms;
  for (const auto& t : terms)
    if (!t.is_zero()) doms.push_back(domain_projection(t));
  CosetSet u;
  if (!disjoint_union(doms, u)) return false;
  if (!(u == domain_projection(rhs))) return false;
  for (const auto& t : terms)
    if (!t.is_zero() && !(compose(rhs, MonomialOp::identity_on(t.domain())) == t)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Relations

enum class Relation {
  i,                  // s_p^* s_q = s_q s_p^*
  i_prime,            // s_p s_q = s_pq on H+
  ii,                 // s_p u = u^p s_p
  iii,                // sum_m e_{m+pZ} = 1
  cnp1,               // s_p u^g = u^{pg} s_p on H+
  cnp2,               // s_p^* u^g s_q, both cases
  cnp3,               // sum over Z/hZ of e_{g,h} = 1 on H+
  double_comm_chain,  // (i') + (iii) => (i) through the summed chain
  coset_refinement,   // e_{m+hZ} = sum_k e_{m+hk+h'Z}
  alpha_action,       // s_q e_{m+pZ} u^{m-n} s_q^* = e_{qm+pqZ} u^{qm-qn}
  torsion_generators  // (u^m s_p)(u^n s_q) = (u^n' s_q)(u^m' s_p) iff theta
};

inline const std::vector<std::pair<Relation, std::string>>& relation_names() {
  static const std::vector<std::pair<Relation, std::string>> names = {
      {Relation::i, "i"},
      {Relation::i_prime, "i'"},
      {Relation::ii, "ii"},
      {Relation::iii, "iii"},
      {Relation::cnp1, "cnp1"},
      {Relation::cnp2, "cnp2"},
      {Relation::cnp3, "cnp3"},
      {Relation::double_comm_chain, "double_comm_chain"},
      {Relation::coset_refinement, "coset_refinement"},
      {Relation::alpha_action, "alpha_action"},
      {Relation::torsion_generators, "torsion_generators"},
  };
  return names;
}

inline std::string to_string(Relation r) {
  for (const auto& [rel, name] : relation_names())
    if (rel == r) return name;
  return "?";
}

inline Relation parse_relation(const std::string& s) {
  for (const auto& [rel, name] : relation_names())
    if (name == s) return rel;
  throw InputError("unknown relation id '" + s + "'");
}

// e_{m+hZ} = u^m s_h s_h^* u^{-m}.
inline MonomialOp range_projection_op(const Integer& m, const Integer& h) {
  return product({u_pow(m), s_of(h), s_star_of(h), u_pow(-m)});
}

inline bool in_h_plus_of(Integer h, const PrimeFamily& fam) {
  if (h < 1) return false;
  for (auto p : fam.elements())
    while (h % p == 0) h /= p;
  return h == 1;
}

// Elements of H+ up to `bound` (1 included), ascending.
inline std::vector<Integer> h_plus_elements(const PrimeFamily& fam, const Integer& bound) {
  std::set<Integer> out{1};
  std::vector<Integer> frontier{1};
  while (!frontier.empty()) {
    std::vector<Integer> next;
    for (const auto& h : frontier)
      for (auto p : fam.elements()) {
        Integer x = h * p;
        if (x <= bound && out.insert(x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

// Elements of the monoid generated by P up to `bound`.
inline std::vector<Integer> p_monoid_elements(const PrimeFamily& fam, const Integer& bound) {
  std::set<Integer> out{1};
  std::vector<Integer> frontier{1};
  while (!frontier.empty()) {
    std::vector<Integer> next;
    for (const auto& h : frontier)
      for (auto p : fam.primes()) {
        Integer x = h * p;
        if (x <= bound && out.insert(x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

// (CNP 2) for p, q in H+ and g in Z: s_p^* u^g s_q equals
// u^{g1} s_{q/d} s_{p/d}^* u^{g2} when g = p g1 + q g2 (d = gcd(p,q)), and 0
// when no such decomposition exists. Two different decompositions are tried.
inline bool verify_cnp2(const Integer& p, const Integer& q, const Integer& g) {
  require(p >= 1 && q >= 1, "cnp2 needs positive p, q");
  const MonomialOp lhs = product({s_star_of(p), u_pow(g), s_of(q)});
  const ExtGcd e = ext_gcd(p, q);
  if (g % e.g != 0) return lhs.is_zero();
  const Integer g1 = e.x * (g / e.g), g2 = e.y * (g / e.g);
  const Integer pd = p / e.g, qd = q / e.g;
  for (const Integer& shift : {Integer(0), Integer(1), Integer(-2)}) {
    const Integer a = g1 + shift * qd, b = g2 - shift * pd;
    ensure(p * a + q * b == g, "bad decomposition");
    const MonomialOp rhs = product({u_pow(a), s_of(qd), s_star_of(pd), u_pow(b)});
    if (!(lhs == rhs)) return false;
  }
  return true;
}

// (u^m s_p)(u^n s_q) = (u^a s_q)(u^b s_p) holds exactly for (a, b) =
// theta_{p,q}(m, n), over all labels.
inline bool torsion_generators_match_theta(std::int64_t p, std::int64_t q) {
  std::map<std::string, std::vector<std::pair<std::int64_t, std::int64_t>>> rhs;
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < p; ++b)
      rhs[product({u_pow(a), s_of(q), u_pow(b), s_of(p)}).to_string()].emplace_back(a, b);
  for (std::int64_t m = 0; m < p; ++m)
    for (std::int64_t n = 0; n < q; ++n) {
      const auto it = rhs.find(product({u_pow(m), s_of(p), u_pow(n), s_of(q)}).to_string());
      if (it == rhs.end() || it->second.size() != 1 || it->second[0] != kgraph::theta(p, q, m, n))
        return false;
    }
  return true;
}

struct RelationReport {
  Relation relation;
  bool ok = true;
  std::size_t checks = 0;
  std::string first_failure;

  void record(bool pass, const std::string& what) {
    ++checks;
    if (!pass && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

inline RelationReport check_relation(Relation rel, const PrimeFamily& fam) {
  RelationReport rep{rel, true, 0, {}};
  const auto& s = fam.elements();
  const std::vector<Integer> hp = h_plus_elements(fam, 60);
  const MonomialOp u = generator(Symbol::u, fam);
  auto tag = [](std::initializer_list<Integer> xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ",") + x.str();
    return "(" + out + ")";
  };

  switch (rel) {
    case Relation::i:
      for (auto p : s)
        for (auto q : s) {
          if (p == q) continue;
          const auto sp_star = generator(Symbol::s_star, fam, p);
          const auto sq = generator(Symbol::s, fam, q);
          rep.record(compose(sp_star, sq) == compose(sq, sp_star), "i" + tag({p, q}));
        }
      break;

    case Relation::i_prime:
      for (const auto& p : hp)
        for (const auto& q : hp) rep.record(compose(s_of(p), s_of(q)) == s_of(p * q), "i'" + tag({p, q}));
      break;

    case Relation::ii:
      for (auto p : s) {
        const auto sp = generator(Symbol::s, fam, p);
        rep.record(compose(sp, u) == compose(u_pow(p), sp), "ii" + tag({p}));
      }
      break;

    case Relation::iii:
      for (auto p : s) {
        std::vector<CosetSet> parts;
        for (std::int64_t m = 0; m < p; ++m) {
          const MonomialOp e = product({u_pow(m), generator(Symbol::s, fam, p),
                                        generator(Symbol::s_star, fam, p), u_pow(-m)});
          rep.record(e == MonomialOp::identity_on({m, p}), "iii projection" + tag({p, m}));
          // independent of the representative of m + pZ
          for (std::int64_t n = -2; n <= 2; ++n)
            rep.record(range_projection_op(m + p * n, p) == e, "iii representative" + tag({p, m, n}));
          parts.push_back(range_projection(e));
        }
        rep.record(partition_check(parts), "iii partition" + tag({p}));
      }
      break;

    case Relation::cnp1:
      for (const auto& p : hp)
        for (int g = -5; g <= 5; ++g)
          rep.record(compose(s_of(p), u_pow(g)) == compose(u_pow(p * g), s_of(p)),
                     "cnp1" + tag({p, g}));
      break;

    case Relation::cnp2:
      for (const auto& p : hp) {
        if (p > 30) continue;
        for (const auto& q : hp) {
          if (q > 30) continue;
          for (int g = -7; g <= 7; ++g) rep.record(verify_cnp2(p, q, g), "cnp2" + tag({p, q, g}));
        }
      }
      break;

    case Relation::cnp3:
      for (const auto& h : hp) {
        std::vector<CosetSet> parts;
        for (Integer g = 0; g < h; ++g) {
          const MonomialOp e = range_projection_op(g, h);
          rep.record(e == adjoint(e) && compose(e, e) == e, "cnp3 projection" + tag({h, g}));
          parts.push_back(range_projection(e));
        }
        rep.record(partition_check(parts), "cnp3 partition" + tag({h}));
      }
      break;

    case Relation::double_comm_chain:
      // s_r^* u^k s_r != 0 forces k in rZ
      for (auto r : s)
        for (std::int64_t k = -2 * r; k <= 2 * r; ++k) {
          const bool nonzero = !product({s_star_of(r), u_pow(k), s_of(r)}).is_zero();
          rep.record(!nonzero || k % r == 0, "chain support" + tag({r, k}));
        }
      for (auto p : s)
        for (auto q : s) {
          if (p == q) continue;
          const Integer pq = Integer(p) * q;
          std::vector<MonomialOp> first, second;
          for (Integer k = 0; k < pq; ++k) {
            first.push_back(product({s_star_of(p), u_pow(k), s_of(pq), s_star_of(pq), u_pow(-k),
                                     s_of(q)}));
            second.push_back(product({s_star_of(p), u_pow(k), s_of(p), s_of(q), s_star_of(p),
                                      s_star_of(q), u_pow(-k), s_of(q)}));
            rep.record(first.back() == second.back(), "chain term" + tag({p, q, k}));
          }
          const MonomialOp lhs = compose(s_star_of(p), s_of(q));
          const MonomialOp rhs = compose(s_of(q), s_star_of(p));
          rep.record(piecewise_sum_equals(first, lhs), "chain sum = s_p^* s_q" + tag({p, q}));
          rep.record(piecewise_sum_equals(second, rhs), "chain sum = s_q s_p^*" + tag({p, q}));
        }
      break;

    case Relation::coset_refinement:
      for (const auto& h : p_monoid_elements(fam, 30)) {
        // smallest h' in H+ that h divides
        std::optional<Integer> hprime;
        for (const auto& x : h_plus_elements(fam, 2000))
          if (x % h == 0) {
            hprime = x;
            break;
          }
        if (!hprime) continue;
        const Integer ell = *hprime / h;
        for (Integer m = 0; m < h; ++m) {
          std::vector<CosetSet> parts;
          for (Integer k = 0; k < ell; ++k) {
            const Integer base = m + h * k;
            const MonomialOp e = range_projection_op(base, *hprime);
            rep.record(e == MonomialOp::identity_on({base, *hprime}),
                       "refinement projection" + tag({base, *hprime}));
            parts.push_back(range_projection(e));
          }
          CosetSet u_set;
          rep.record(disjoint_union(parts, u_set) && u_set == CosetSet::of({m, h}),
                     "refinement" + tag({m, h, *hprime}));
        }
      }
      break;

    case Relation::alpha_action:
      for (const auto& p : hp) {
        if (p > 15) continue;
        for (const auto& q : hp) {
          if (q > 15) continue;
          for (Integer m = 0; m < p; ++m)
            for (Integer n = 0; n < p; ++n) {
              const MonomialOp lhs =
                  product({s_of(q), range_projection_op(m, p), u_pow(m - n), s_star_of(q)});
              const MonomialOp rhs = product({range_projection_op(q * m, p * q), u_pow(q * m - q * n)});
              const MonomialOp mid = product({u_pow(q * m), s_of(p * q), s_star_of(p * q), u_pow(-q * n)});
              rep.record(lhs == rhs && rhs == mid, "alpha" + tag({p, q, m, n}));
            }
        }
      }
      break;

    case Relation::torsion_generators:
      for (auto p : s)
        for (auto q : s)
          if (p != q && p <= 20 && q <= 20)
            rep.record(torsion_generators_match_theta(p, q), "torsion generators" + tag({p, q}));
      break;
  }
  return rep;
}

inline bool verify_relation(Relation rel, const PrimeFamily& fam) {
  return check_relation(rel, fam).ok;
}

// Accepts the names in relation_names() and the parametrised form
// "cnp2(p,q,g)".
inline bool verify_relation(const std::string& id, const PrimeFamily& fam) {
  if (id.rfind("cnp2(", 0) == 0 && id.size() > 6 && id.back() == ')') {
    std::vector<Integer> args;
    std::string_view body(id);
    body = body.substr(5, body.size() - 6);
    std::size_t start = 0;
    for (;;) {
      const auto comma = body.find(',', start);
      args.push_back(parse_integer(body.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    require(args.size() == 3, "cnp2 takes three arguments: cnp2(p,q,g)");
    require(in_h_plus_of(args[0], fam) && in_h_plus_of(args[1], fam),
            "cnp2: p and q must lie in H+");
    return verify_cnp2(args[0], args[1], args[2]);
  }
  return verify_relation(parse_relation(id), fam);
}

}  // namespace qsk::monocalc
