#include "kstab/integration.hpp"

#include <algorithm>

#include "kstab/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kstab {

namespace {

void check_degree(const Polynomial& f) {
  if (f.degree() > kMaxIntegrandDegree) {
    throw Error(ErrorKind::InvalidArgument,
                "integrand degree " + std::to_string(f.degree()) + " exceeds " + std::to_string(kMaxIntegrandDegree));
  }
}

// Integer bounding box of kP plus the per-constraint integer thresholds
// floor(kλ_i), so membership of a lattice point is an integer comparison.
struct Box {
  std::vector<mpz_class> lo, hi;
  std::vector<std::vector<mpz_class>> normals;
  std::vector<mpz_class> limits;
  std::uint64_t cells = 1;
};

Box bounding_box(const Polytope& p, long k, std::uint64_t budget) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "lattice scale k must be positive");
  const std::size_t n = p.dim();
  Box b;
  const Rational kr(k);
  for (std::size_t j = 0; j < n; ++j) {
    Rational mn = p.vertices()[0][j], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    b.lo.push_back(ceil(kr * mn));
    b.hi.push_back(floor(kr * mx));
    const mpz_class extent = b.hi.back() - b.lo.back() + 1;
    if (extent <= 0) {
      b.cells = 0;
      continue;
    }
    if (!extent.fits_ulong_p() || extent.get_ui() > budget ||
        (b.cells != 0 && b.cells > budget / extent.get_ui())) {
      throw Error(ErrorKind::ScaleOverflow, "bounding box of kP exceeds the cell budget of " + std::to_string(budget));
    }
    b.cells *= extent.get_ui();
  }
  if (b.cells > budget) throw Error(ErrorKind::ScaleOverflow, "bounding box of kP exceeds the cell budget");
  for (const auto& h : p.halfspaces()) {
    std::vector<mpz_class> l;
    for (const auto& c : h.normal) l.push_back(c.numerator());
    b.normals.push_back(std::move(l));
    b.limits.push_back(floor(kr * h.bound));
  }
  return b;
}

// Decodes the flat box index into a lattice point; false if outside kP.
bool box_point(const Box& b, std::uint64_t flat, std::vector<mpz_class>& point) {
  const std::size_t n = b.lo.size();
  for (std::size_t j = n; j-- > 0;) {
    const std::uint64_t extent = mpz_class(b.hi[j] - b.lo[j] + 1).get_ui();
    point[j] = b.lo[j] + mpz_class(static_cast<unsigned long>(flat % extent));
    flat /= extent;
  }
  for (std::size_t i = 0; i < b.normals.size(); ++i) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < n; ++j) s += b.normals[i][j] * point[j];
    if (s > b.limits[i]) return false;
  }
  return true;
}

Vec scaled(const std::vector<mpz_class>& point, long k) {
  Vec x;
  x.reserve(point.size());
  for (const auto& c : point) x.push_back(Rational(mpq_class(c, k)));
  return x;
}

}  // namespace

Rational integrate_simplex(const Simplex& s, const Polynomial& f, const Rational& measure) {
  check_degree(f);
  const std::size_t k = s.dim();
  const std::size_t bary = k + 1;
  std::vector<Polynomial> subs;
  for (std::size_t j = 0; j < f.vars(); ++j) {
    Polynomial xj(bary);
    for (std::size_t i = 0; i < bary; ++i) {
      Exponent e(bary, 0);
      e[i] = 1;
      xj.add_term(e, s.vertices[i][j]);
    }
    subs.push_back(std::move(xj));
  }
  const Polynomial g = f.vars() == 0 ? f : f.substitute(subs);
  Rational total;
  for (const auto& [beta, c] : g.terms()) {
    unsigned order = 0;
    Rational num(1);
    for (auto b : beta) {
      order += b;
      num *= factorial(b);
    }
    total += c * num / factorial(static_cast<unsigned>(k) + order);
  }
  return total * factorial(static_cast<unsigned>(k)) * measure;
}

Rational integrate_monomial_simplex(const Simplex& s, const Exponent& alpha) {
  return integrate_simplex(s, Polynomial::monomial(alpha), volume(s));
}

Rational integrate_polynomial(const Polytope& p, const Polynomial& f) {
  Rational total;
  for (const auto& idx : p.triangulation()) {
    const Simplex s = p.simplex(idx);
    total += integrate_simplex(s, f, volume(s));
  }
  return total;
}

Rational boundary_integral(const Polytope& p, const Polynomial& f) {
  Rational total;
  for (const auto& facet : p.facets()) {
    const auto& h = p.halfspaces()[facet.halfspace_index];
    for (const auto& idx : facet.simplices) {
      const Simplex s = p.simplex(idx);
      total += integrate_simplex(s, f, boundary_measure(h, s));
    }
  }
  return total;
}

Rational integrate_pl(const PLFunction& u, const Polynomial& weight) {
  Rational total;
  for (const auto& cell : u.cells()) {
    total += integrate_polynomial(cell.region, weight * Polynomial::from_affine(u.pieces()[cell.piece]));
  }
  return total;
}

Rational integrate_pl(const PLFunction& u) {
  return integrate_pl(u, Polynomial::constant(u.domain().dim(), Rational(1)));
}

Rational boundary_integral(const PLFunction& u, const Polynomial& weight) {
  Rational total;
  const auto& dom = u.domain();
  for (const auto& bp : boundary_pieces(u)) {
    const auto& h = dom.halfspaces()[bp.domain_facet];
    const Polynomial f = weight * Polynomial::from_affine(u.pieces()[bp.piece]);
    for (const auto& s : bp.simplices) total += integrate_simplex(s, f, boundary_measure(h, s));
  }
  return total;
}

Rational boundary_integral(const PLFunction& u) {
  return boundary_integral(u, Polynomial::constant(u.domain().dim(), Rational(1)));
}

Rational integrate_product(const PLFunction& phi, const PLFunction& psi) {
  Rational total;
  for (const auto& a : phi.cells()) {
    for (const auto& b : psi.cells()) {
      auto common = intersect(a.region, b.region.halfspaces());
      if (!common) continue;
      const Polynomial f =
          Polynomial::from_affine(phi.pieces()[a.piece]) * Polynomial::from_affine(psi.pieces()[b.piece]);
      total += integrate_polynomial(*common, f);
    }
  }
  return total;
}

std::vector<std::vector<long>> lattice_points(const Polytope& p, long k, std::uint64_t cell_budget) {
  const Box b = bounding_box(p, k, cell_budget);
  std::vector<std::vector<long>> out;
  std::vector<mpz_class> point(p.dim());
  for (std::uint64_t flat = 0; flat < b.cells; ++flat) {
    if (!box_point(b, flat, point)) continue;
    std::vector<long> ip;
    for (const auto& c : point) ip.push_back(c.get_si());
    out.push_back(std::move(ip));
  }
  return out;
}

LatticeSum lattice_sum_serial(const Polytope& p, long k, const LatticeWeight& w, std::uint64_t cell_budget) {
  const Box b = bounding_box(p, k, cell_budget);
  LatticeSum out;
  out.k = k;
  std::vector<mpz_class> point(p.dim());
  for (std::uint64_t flat = 0; flat < b.cells; ++flat) {
    if (!box_point(b, flat, point)) continue;
    ++out.count;
    out.weighted_sum += w(scaled(point, k));
  }
  return out;
}

LatticeSum lattice_sum(const Polytope& p, long k, const LatticeWeight& w, std::uint64_t cell_budget) {
  const Box b = bounding_box(p, k, cell_budget);
  LatticeSum out;
  out.k = k;
  const auto total = static_cast<long long>(b.cells);
#pragma omp parallel
  {
    std::vector<mpz_class> point(p.dim());
    Rational local_sum;
    std::uint64_t local_count = 0;
#pragma omp for schedule(static) nowait
    for (long long flat = 0; flat < total; ++flat) {
      if (!box_point(b, static_cast<std::uint64_t>(flat), point)) continue;
      ++local_count;
      local_sum += w(scaled(point, k));
    }
#pragma omp critical(kstab_lattice_sum)
    {
      out.count += local_count;
      out.weighted_sum += local_sum;
    }
  }
  return out;
}

LatticeSum pl_lattice_sum(const PLFunction& phi, long k, std::uint64_t cell_budget) {
  return lattice_sum(phi.domain(), k, [&](const Vec& x) { return phi.value(x); }, cell_budget);
}

Rational ehrhart_residual(const PLFunction& phi, long k, std::uint64_t cell_budget) {
  const std::size_t n = phi.domain().dim();
  const LatticeSum s = pl_lattice_sum(phi, k, cell_budget);
  const Rational kr(k);
  return s.weighted_sum - pow(kr, static_cast<unsigned>(n)) * integrate_pl(phi) -
         pow(kr, static_cast<unsigned>(n - 1)) / Rational(2) * boundary_integral(phi);
}

}  // namespace kstab
