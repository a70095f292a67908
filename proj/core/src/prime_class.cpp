#include "modgraph/prime_class.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "modgraph/errors.hpp"
#include "modgraph/graph_io.hpp"

namespace modgraph {

namespace {

bool is_path_graph(const LabeledGraph& g) {
  const std::size_t n = g.size();
  if (n < 2 || g.edge_count() != n - 1) return false;
  std::size_t ends = 0;
  for (Vertex v = 0; v < n; ++v) {
    std::size_t d = g.degree(v);
    if (d == 0 || d > 2) return false;
    ends += d == 1;
  }
  if (ends != 2) return false;
  // n - 1 edges, degrees <= 2 and connected means a path.
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v = 0; v < n; ++v)
      if (!seen[v] && g.adjacent(u, v)) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == n;
}

// Component sizes of a disjoint union of paths, sorted; nullopt otherwise.
std::optional<std::vector<std::size_t>> linear_forest_profile(const LabeledGraph& g) {
  const std::size_t n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> sizes;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    std::size_t edges2 = 0;
    for (std::size_t h = 0; h < comp.size(); ++h) {
      std::size_t d = g.degree(comp[h]);
      if (d > 2) return std::nullopt;
      edges2 += d;
      for (Vertex v = 0; v < n; ++v)
        if (!seen[v] && g.adjacent(comp[h], v)) {
          seen[v] = 1;
          comp.push_back(v);
        }
    }
    if (edges2 / 2 != comp.size() - 1) return std::nullopt;
    sizes.push_back(comp.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// Labeled occurrences of `pattern` in the path 1-2-...-n.
BigInt path_occurrences(const LabeledGraph& pattern, std::size_t n) {
  const std::size_t k = pattern.size();
  if (k > n) return 0;
  if (k == 0) return 1;
  auto profile = linear_forest_profile(pattern);
  if (!profile) return 0;
  // A k-subset of the path is determined by which consecutive gaps equal one (bit set)
  // and the slack; a pattern with m larger gaps admits C(n-k+1, m+1) placements.
  BigInt subsets = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << (k - 1)); ++b) {
    std::vector<std::size_t> runs;
    std::size_t run = 1;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if ((b >> i) & 1U) {
        ++run;
      } else {
        runs.push_back(run);
        run = 1;
      }
    }
    runs.push_back(run);
    std::sort(runs.begin(), runs.end());
    if (runs != *profile) continue;
    std::size_t gaps = (k - 1) - static_cast<std::size_t>(std::popcount(b));
    subsets += binomial(n - k + 1, gaps + 1);
  }
  return subsets * BigInt(static_cast<unsigned long>(automorphism_count(pattern)));
}

LabeledGraph relabel(const LabeledGraph& g, const std::vector<Vertex>& perm) {
  LabeledGraph h(g.size());
  for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
  return h;
}

std::vector<Vertex> random_permutation(std::size_t n, RngStream& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  rng.partial_shuffle(perm, n);
  return perm;
}

double falling(std::size_t n, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= static_cast<double>(n - static_cast<std::size_t>(i));
  return r;
}

// Sums c_j x^j with a ratio-test tail estimate inflated by a safety factor of 10.
template <class Coeff>
double sum_with_tail(Coeff&& coeff, std::size_t first, double x, double radius, double tol) {
  constexpr std::size_t kMaxTerms = 4000;
  double sum = 0.0, prev = 0.0;
  bool any = false;
  for (std::size_t j = first; j < first + kMaxTerms; ++j) {
    double t = coeff(j) * std::pow(x, static_cast<double>(j));
    sum += t;
    if (t > 0.0) {
      if (any && prev > 0.0 && j >= first + 8) {
        double rho = std::max(t / prev, std::isfinite(radius) ? x / radius : 0.0);
        if (rho < 1.0 && 10.0 * t * rho / (1.0 - rho) <= tol) return sum;
      }
      any = true;
    } else if (any && prev == 0.0 && j >= first + 64) {
      return sum;
    }
    prev = t;
  }
  if (!any) return 0.0;
  throw TruncationError("series tail could not be bounded at the requested tolerance");
}

}  // namespace

PrimeClass PrimeClass::empty() {
  PrimeClass c;
  c.kind_ = PrimeClassKind::Finite;
  c.name_ = "empty";
  return c;
}

PrimeClass PrimeClass::finite(const std::vector<LabeledGraph>& primes) {
  PrimeClass c;
  c.kind_ = PrimeClassKind::Finite;
  for (const auto& g : primes) {
    if (!is_prime(g)) throw ContractViolation("class members must be prime graphs");
    bool dup = false;
    for (const auto& r : c.reps_)
      if (r.graph.size() == g.size() && are_isomorphic(r.graph, g)) dup = true;
    if (dup) continue;
    PrimeRepresentative rep;
    rep.graph = g;
    rep.automorphisms = automorphism_count(g);
    rep.labelings = factorial(g.size()) / BigInt(static_cast<unsigned long>(rep.automorphisms));
    c.reps_.push_back(std::move(rep));
  }
  std::stable_sort(c.reps_.begin(), c.reps_.end(),
                   [](const auto& a, const auto& b) { return a.graph.size() < b.graph.size(); });
  c.name_ = c.reps_.empty() ? "empty" : "finite(" + std::to_string(c.reps_.size()) + ")";
  return c;
}

PrimeClass PrimeClass::paths() {
  PrimeClass c;
  c.kind_ = PrimeClassKind::Paths;
  c.name_ = "paths";
  c.radius_ = 1.0;
  return c;
}

PrimeClass PrimeClass::custom(CustomClassSpec spec) {
  if (!spec.count || !spec.occurrences)
    throw ContractViolation("custom classes need count and occurrence providers");
  PrimeClass c;
  c.kind_ = PrimeClassKind::Custom;
  c.name_ = spec.name;
  c.radius_ = spec.radius;
  c.custom_ = std::make_shared<const CustomClassSpec>(std::move(spec));
  return c;
}

std::size_t PrimeClass::max_prime_size() const {
  if (kind_ != PrimeClassKind::Finite) return SIZE_MAX;
  return reps_.empty() ? 0 : reps_.back().graph.size();
}

BigInt PrimeClass::count(std::size_t n) const {
  switch (kind_) {
    case PrimeClassKind::Finite: {
      BigInt total = 0;
      for (const auto& r : reps_)
        if (r.graph.size() == n) total += r.labelings;
      return total;
    }
    case PrimeClassKind::Paths:
      return n < 4 ? BigInt(0) : BigInt(factorial(n) / 2);
    case PrimeClassKind::Custom:
      return custom_->count(n);
  }
  return 0;
}

bool PrimeClass::contains(const LabeledGraph& g) const {
  switch (kind_) {
    case PrimeClassKind::Finite:
      for (const auto& r : reps_)
        if (r.graph.size() == g.size() && are_isomorphic(r.graph, g)) return true;
      return false;
    case PrimeClassKind::Paths:
      return g.size() >= 4 && is_path_graph(g);
    case PrimeClassKind::Custom:
      if (!custom_->contains) throw ContractViolation("custom class has no membership test");
      return custom_->contains(g);
  }
  return false;
}

BigInt PrimeClass::occurrence_total(const LabeledGraph& pattern, std::size_t n) const {
  switch (kind_) {
    case PrimeClassKind::Finite: {
      BigInt total = 0;
      for (const auto& r : reps_)
        if (r.graph.size() == n) total += r.labelings * occ_count_labeled(pattern, r.graph);
      return total;
    }
    case PrimeClassKind::Paths:
      if (n < 4) return 0;
      return count(n) * path_occurrences(pattern, n);
    case PrimeClassKind::Custom:
      return custom_->occurrences(pattern, n);
  }
  return 0;
}

bool PrimeClass::can_sample() const {
  return kind_ != PrimeClassKind::Custom || static_cast<bool>(custom_->sample);
}

LabeledGraph PrimeClass::sample_member(std::size_t n, RngStream& rng) const {
  switch (kind_) {
    case PrimeClassKind::Finite: {
      BigInt total = count(n);
      if (sgn(total) == 0) throw NoObjectError("no prime of size " + std::to_string(n));
      BigInt r = rng.below(total);
      for (const auto& rep : reps_) {
        if (rep.graph.size() != n) continue;
        if (r < rep.labelings) return relabel(rep.graph, random_permutation(n, rng));
        r -= rep.labelings;
      }
      break;
    }
    case PrimeClassKind::Paths: {
      if (n < 4) throw NoObjectError("no prime path of size " + std::to_string(n));
      return relabel(LabeledGraph::path(n), random_permutation(n, rng));
    }
    case PrimeClassKind::Custom:
      if (!custom_->sample) throw ContractViolation("custom class has no member sampler");
      return custom_->sample(n, rng);
  }
  throw NoObjectError("no prime of size " + std::to_string(n));
}

BigInt class_count(const PrimeClass& cls, std::size_t n) { return cls.count(n); }

ExactSeries prime_series(const PrimeClass& cls, std::size_t order) {
  ExactSeries p(order);
  for (std::size_t n = 1; n <= order; ++n) {
    BigInt c = cls.count(n);
    if (sgn(c) != 0) p[n] = Rational(c) / Rational(factorial(n));
  }
  return p;
}

double prime_egf(const PrimeClass& cls, double x, int derivative, double tol) {
  if (x < 0.0) throw ContractViolation("prime EGF is evaluated on x >= 0");
  if (derivative < 0) throw ContractViolation("negative derivative order");
  if (x >= cls.radius()) throw DivergenceError("evaluation point outside the disc of convergence");
  const int m = derivative;
  switch (cls.kind()) {
    case PrimeClassKind::Finite: {
      double sum = 0.0;
      for (const auto& r : cls.representatives()) {
        std::size_t s = r.graph.size();
        if (s < static_cast<std::size_t>(m)) continue;
        sum += falling(s, m) * std::pow(x, static_cast<double>(s) - m) /
               static_cast<double>(r.automorphisms);
      }
      return sum;
    }
    case PrimeClassKind::Paths: {
      if (x < 0.5) {
        double sum = 0.0;
        for (std::size_t n = std::max<std::size_t>(4, m);; ++n) {
          double t = 0.5 * falling(n, m) * std::pow(x, static_cast<double>(n) - m);
          sum += t;
          if (n > static_cast<std::size_t>(m) + 8 && t < 1e-20 * std::max(1.0, sum)) break;
        }
        return sum;
      }
      // P = (1/(1-x) - 1 - x - x^2 - x^3) / 2.
      double pole = std::tgamma(m + 1.0) / std::pow(1.0 - x, m + 1.0);
      static const double poly[4][4] = {
          {1, 1, 1, 1}, {1, 2, 3, 0}, {2, 6, 0, 0}, {6, 0, 0, 0}};
      double q = 0.0;
      if (m < 4)
        for (int i = 3; i >= 0; --i) q = q * x + poly[m][i];
      return 0.5 * (pole - q);
    }
    case PrimeClassKind::Custom: {
      auto coeff = [&](std::size_t n) {
        std::size_t s = n + static_cast<std::size_t>(m);
        BigInt c = cls.count(s);
        if (sgn(c) == 0) return 0.0;
        return Rational(Rational(c) / Rational(factorial(s))).get_d() * falling(s, m);
      };
      return sum_with_tail(coeff, 0, x, cls.radius(), tol);
    }
  }
  return 0.0;
}

double lambda_eval(const PrimeClass& cls, double w, int order, double tol) {
  const double u = std::expm1(w);
  const double ew = u + 1.0;
  if (u >= cls.radius()) throw DivergenceError("w is at or beyond log(1 + radius)");
  switch (order) {
    case 0:
      return prime_egf(cls, u, 0, tol) + u - w;
    case 1:
      return prime_egf(cls, u, 1, tol) * ew + u;
    case 2:
      return prime_egf(cls, u, 2, tol) * ew * ew + prime_egf(cls, u, 1, tol) * ew + ew;
    default:
      throw ContractViolation("lambda_eval supports orders 0, 1, 2");
  }
}

ExactSeries occ_series(const PrimeClass& cls, const LabeledGraph& pattern, std::size_t order,
                       bool labeled) {
  const std::size_t k = pattern.size();
  Rational scale = 1;
  if (!labeled)
    scale = Rational(factorial(k)) / Rational(static_cast<unsigned long>(automorphism_count(pattern)));
  ExactSeries s(order);
  const std::size_t top = std::min(order, cls.max_prime_size() == SIZE_MAX
                                              ? order
                                              : (cls.max_prime_size() >= k
                                                     ? cls.max_prime_size() - k
                                                     : 0));
  for (std::size_t j = 0; j <= top; ++j) {
    BigInt total = cls.occurrence_total(pattern, j + k);
    if (sgn(total) == 0) continue;
    s[j] = Rational(total) / Rational(factorial(j + k)) * scale;
  }
  return s;
}

double occ_series_eval(const PrimeClass& cls, const LabeledGraph& pattern, double x, double tol) {
  const std::size_t k = pattern.size();
  if (cls.kind() == PrimeClassKind::Finite) {
    double sum = 0.0;
    for (const auto& r : cls.representatives()) {
      if (r.graph.size() < k) continue;
      Rational c = Rational(r.labelings * occ_count_labeled(pattern, r.graph)) /
                   Rational(factorial(r.graph.size()));
      sum += c.get_d() * std::pow(x, static_cast<double>(r.graph.size() - k));
    }
    return sum;
  }
  if (x >= cls.radius()) throw DivergenceError("evaluation point outside the disc of convergence");
  if (cls.kind() == PrimeClassKind::Paths && !linear_forest_profile(pattern)) return 0.0;
  auto coeff = [&](std::size_t j) {
    BigInt total = cls.occurrence_total(pattern, j + k);
    if (sgn(total) == 0) return 0.0;
    return Rational(Rational(total) / Rational(factorial(j + k))).get_d();
  };
  return sum_with_tail(coeff, 0, x, cls.radius(), tol);
}

ConditionReport check_condition_c(const PrimeClass& cls) {
  ConditionReport rep;
  const double r0 = cls.radius();
  if (!(r0 > 0.0)) {
    rep.reason = "radius of convergence of P is zero";
    return rep;
  }
  auto lambda1 = [&](double w) { return lambda_eval(cls, w, 1); };
  if (std::isinf(r0)) {
    double hi = 1.0;
    while (lambda1(hi) <= 1.0) hi *= 2.0;
    rep.holds = true;
    rep.reason = "P is entire; Lambda' grows without bound";
    rep.kappa_hi = hi;
    return rep;
  }
  const double wmax = std::log1p(r0);
  std::optional<double> boundary;
  if (cls.kind() == PrimeClassKind::Paths) boundary = std::numeric_limits<double>::infinity();
  if (cls.custom_spec() && cls.custom_spec()->boundary_derivative)
    boundary = *cls.custom_spec()->boundary_derivative;
  if (boundary && *boundary * (1.0 + r0) + r0 <= 1.0) {
    rep.reason = "Lambda' at log(1 + R0) does not exceed 1";
    return rep;
  }
  // Approach the boundary until Lambda' exceeds 1.
  for (int k = 1; k <= 60; ++k) {
    double w = std::log1p(r0 * (1.0 - std::ldexp(1.0, -k)));
    double v = 0.0;
    try {
      v = lambda1(w);
    } catch (const TruncationError&) {
      break;
    }
    if (v > 1.0) {
      rep.holds = true;
      rep.reason = boundary && std::isinf(*boundary) ? "P' has a pole at R0"
                                                     : "Lambda' exceeds 1 below log(1 + R0)";
      rep.kappa_hi = w;
      return rep;
    }
  }
  rep.reason = "could not certify Lambda' > 1 below log(1 + R0) = " + std::to_string(wmax);
  return rep;
}

namespace {
using Json = nlohmann::ordered_json;
}

PrimeClass parse_class_file(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("class file: ") + e.what(), 0);
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("class file needs a string 'kind'", 0);
  const std::string kind = j["kind"];
  if (kind == "paths") return PrimeClass::paths();
  if (kind == "empty") return PrimeClass::empty();
  if (kind != "finite") throw ParseError("unknown class kind '" + kind + "'", 0);
  std::vector<LabeledGraph> primes;
  if (j.contains("primes")) {
    if (!j["primes"].is_array()) throw ParseError("'primes' must be an array", 0);
    for (const auto& g : j["primes"]) {
      if (!g.is_string()) throw ParseError("each prime is a graph text string", 0);
      primes.push_back(parse_graph(g.get<std::string>()));
      if (!is_prime(primes.back())) throw ParseError("class member is not prime", 0);
    }
  }
  return PrimeClass::finite(primes);
}

std::string format_class_file(const PrimeClass& cls) {
  Json j;
  switch (cls.kind()) {
    case PrimeClassKind::Paths:
      j["kind"] = "paths";
      break;
    case PrimeClassKind::Finite: {
      j["kind"] = "finite";
      Json primes = Json::array();
      for (const auto& r : cls.representatives()) primes.push_back(format_graph(r.graph));
      j["primes"] = std::move(primes);
      break;
    }
    case PrimeClassKind::Custom:
      throw ContractViolation("custom classes have no file form");
  }
  return j.dump(2) + "\n";
}

PrimeClass load_class(const std::string& spec) {
  if (spec == "builtin:paths") return PrimeClass::paths();
  if (spec == "builtin:empty") return PrimeClass::empty();
  if (spec == "builtin:p4") return PrimeClass::finite({LabeledGraph::path(4)});
  return parse_class_file(read_text_file(spec));
}

}  // namespace modgraph
