#include "support.hpp"

#include "mhdlab/besov.hpp"
#include "mhdlab/paraproduct.hpp"

#include <doctest.h>

#include <climits>
#include <cmath>
#include <numbers>

using namespace mhdlab;
using mhdlab::testing::cosine_mode;
using mhdlab::testing::random_field;
using mhdlab::testing::rel;
using mhdlab::testing::rel_l2;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoPi = 2.0 * kPi;

// Independent shell-sum oracle: shells by floor(log2|k|) computed directly from
// each coefficient, norms by Parseval.
double oracle_besov(const SpectralField& f, double s, double eps = 0.0, double r = 2.0) {
  const Grid& g = f.grid();
  std::map<int, double> e;
  for (Eigen::Index m = 1; m < g.modes(); ++m) {
    const double k = g.kabs()(m);
    int j = static_cast<int>(std::floor(std::log2(k) + 1e-12));
    e[j] += f.coeffs().row(m).abs2().sum() * g.volume();
  }
  double sum = 0.0;
  for (auto [j, v] : e) {
    double w = std::pow(2.0, j * s);
    if (eps > 0.0) {
      const double ex = std::isinf(r) ? 1.0 : 1.0 - 2.0 / r;
      w *= std::pow(std::max(eps, std::pow(2.0, -j)), ex);
    }
    sum += w * std::sqrt(v);
  }
  return sum;
}

bool same(const SpectralField& a, const SpectralField& b, double tol = 1e-14) {
  return (a - b).coeffs().abs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("grid validates its parameters") {
  CHECK_THROWS_AS(Grid(1, 16, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 24, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 16, 0.0), std::invalid_argument);
  const Grid g(2, 64, kTwoPi);
  CHECK(g.dealias_cutoff() == 21);
  CHECK(g.modes() == 64 * 64);
  CHECK(g.kabs()(g.mode_index({3, -4, 0})) == doctest::Approx(5.0));
  CHECK(Grid(3, 8, 1.0).dealias_cutoff() == 2);
}

TEST_CASE("transform round trip keeps real fields real") {
  std::mt19937_64 rng(1);
  for (int d : {2, 3}) {
    const Grid g(d, 16, 3.0);
    const SpectralField f = random_field(g, d, rng);
    CHECK(hermitian_defect(f) < 1e-15);
    CHECK(rel_l2(to_spectral(to_physical(f)), f) < 1e-14);
    CHECK(f.coeffs().col(0).cwiseProduct(1.0 - g.keep()).abs().maxCoeff() == 0.0);
  }
}

TEST_CASE("sampling a cosine hits one mode pair") {
  const Grid g(2, 32, kTwoPi);
  const SpectralField f = sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(4 * x[0]); });
  CHECK(same(f, cosine_mode(g, {4, 0, 0})));
}

TEST_CASE("dyadic blocks of single modes") {
  const Grid g(2, 64, kTwoPi);
  const SpectralField f = cosine_mode(g, {4, 0, 0});
  const ShellRange range = shell_range(g);
  for (int j = range.first; j <= range.last; ++j) {
    const SpectralField b = dyadic_block(f, j);
    if (j == 2) {
      CHECK(same(b, f, 0.0));
    } else {
      CHECK(b.coeffs().abs().maxCoeff() == 0.0);
    }
  }
  const SpectralField two = cosine_mode(g, {2, 0, 0}) + cosine_mode(g, {16, 0, 0});
  CHECK(same(dyadic_block(two, 1), cosine_mode(g, {2, 0, 0}), 0.0));
  CHECK(same(dyadic_block(two, 4), cosine_mode(g, {16, 0, 0}), 0.0));
  CHECK(dyadic_block(two, 2).l2_norm() == 0.0);
  CHECK(dyadic_block(two, 3).l2_norm() == 0.0);
  CHECK(dyadic_block(SpectralField(g, 1), 3).l2_norm() == 0.0);

  const BlockResult out = dyadic_block_checked(f, range.last + 4);
  CHECK(out.outside_grid);
  CHECK(out.field.l2_norm() == 0.0);
  CHECK_FALSE(dyadic_block_checked(f, 2).outside_grid);
}

TEST_CASE("low pass examples") {
  const Grid g(2, 64, kTwoPi);
  SpectralField c(g, 1);
  c.coeffs()(0, 0) = 2.5;
  for (int j = -3; j < 8; ++j) CHECK(same(low_pass(c, j), c, 0.0));
  const SpectralField f = cosine_mode(g, {16, 0, 0});
  CHECK(low_pass(f, 2).l2_norm() == 0.0);
  CHECK(same(low_pass(f, 5), f, 0.0));

  std::mt19937_64 rng(7);
  const SpectralField r = random_field(g, 1, rng, 12.0);
  CHECK(same(low_pass(r, shell_range(g).last + 1), r, 0.0));
  // Nested spectra.
  for (int j = 0; j < 6; ++j) {
    CHECK(low_pass(r, j).l2_norm() <= low_pass(r, j + 1).l2_norm());
  }
}

TEST_CASE("reconstruction from shells") {
  std::mt19937_64 rng(11);
  for (int d : {2, 3}) {
    const Grid g(d, 16, 2.0);
    for (Mollifier m : {Mollifier::sharp, Mollifier::smooth}) {
      const SpectralField f = random_field(g, d, rng);
      const DyadicDecomposition dec = decompose(f, m);
      CHECK(rel_l2(dec.reconstruct(), f) <= 1e-12);
      CHECK(hermitian_defect(dec.shells[2].second) < 1e-15);
    }
  }
}

TEST_CASE("smooth shells live in their annuli") {
  const Grid g(2, 64, kTwoPi);
  for (int j = 0; j < 6; ++j) {
    for (Eigen::Index m = 1; m < g.modes(); ++m) {
      const double k = g.kabs()(m);
      const double phi = shell_symbol(k, j, Mollifier::smooth);
      CHECK(phi >= 0.0);
      CHECK(phi <= 1.0);
      if (k < std::ldexp(1.0, j - 1) || k > std::ldexp(1.0, j + 1)) CHECK(phi == 0.0);
    }
  }
  CHECK(smooth_cutoff(0.5) == 1.0);
  CHECK(smooth_cutoff(2.5) == 0.0);
  CHECK(smooth_cutoff(1.5) == doctest::Approx(0.5));
}

TEST_CASE("besov norm examples") {
  const Grid g(2, 64, kTwoPi);
  CHECK(rel(besov_norm(cosine_mode(g, {4, 0, 0}), {1.0, Lebesgue::two}), 4 * kPi * std::sqrt(2.0)) <
        1e-14);
  CHECK(besov_norm(SpectralField(g, 1), {1.0, Lebesgue::two}) == 0.0);

  const SpectralField two = cosine_mode(g, {2, 0, 0}) + cosine_mode(g, {16, 0, 0});
  const double expected = std::sqrt(2.0) * kPi * std::sqrt(2.0) + 4.0 * kPi * std::sqrt(2.0);
  CHECK(rel(besov_norm(two, {0.5, Lebesgue::two}), expected) < 1e-14);
  CHECK(rel(besov_norm(two, {0.5, Lebesgue::two}), oracle_besov(two, 0.5)) < 1e-14);

  // L∞ shells: a unit cosine has sup 1.
  CHECK(rel(besov_norm(cosine_mode(g, {4, 0, 0}), {1.0, Lebesgue::inf}), 4.0) < 1e-14);

  // Mean excluded.
  SpectralField shifted = two;
  shifted.coeffs()(0, 0) = 3.0;
  CHECK(besov_norm(shifted, {0.5, Lebesgue::two}) == besov_norm(two, {0.5, Lebesgue::two}));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const SpectralField f = random_field(g, 2, rng);
    CHECK(rel(besov_norm(f, {0.3, Lebesgue::two}), oracle_besov(f, 0.3)) < 1e-12);
    // Single-pass and blockwise paths agree.
    double blockwise = 0.0;
    const ShellRange range = shell_range(g);
    for (int j = range.first; j <= range.last; ++j) {
      blockwise += std::pow(2.0, 0.3 * j) * dyadic_block(f, j).l2_norm();
    }
    CHECK(rel(besov_norm(f, {0.3, Lebesgue::two}), blockwise) < 1e-12);
  }
}

TEST_CASE("hybrid besov norm examples") {
  const Grid g(2, 64, kTwoPi);
  const double inf = HybridBesovParams::infinity();
  const SpectralField low = cosine_mode(g, {4, 0, 0});
  const double n = low.l2_norm();
  // q = 2, eps = 1/8: 2^{-q} = 1/4 >= eps.
  CHECK(rel(hybrid_besov_norm(low, {1.5, inf, 0.125}), std::pow(2.0, 2 * 0.5) * n) < 1e-14);
  const SpectralField high = cosine_mode(g, {16, 0, 0});
  // q = 4, 2^{-q} = 1/16 < eps.
  CHECK(rel(hybrid_besov_norm(high, {1.5, inf, 0.125}), 0.125 * std::pow(2.0, 4 * 1.5) * n) <
        1e-14);
  const SpectralField both = low + high;
  const HybridBesovParams prm{1.5, inf, 0.125};
  CHECK(rel(hybrid_besov_norm(both, prm), oracle_besov(both, 1.5, 0.125, inf)) < 1e-14);
  CHECK(prm.switch_shell() == 3);

  std::mt19937_64 rng(9);
  const SpectralField f = random_field(g, 1, rng);
  CHECK(rel(hybrid_besov_norm(f, {0.7, 2.0, 0.01}), besov_norm(f, {0.7, Lebesgue::two})) < 1e-14);
  CHECK(rel(hybrid_besov_norm(f, {0.7, 1.0, 0.01}), oracle_besov(f, 0.7, 0.01, 1.0)) < 1e-12);
}

TEST_CASE("besov scaling and interpolation on single shells") {
  const double L = kTwoPi;
  const Grid g(2, 64, L);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    SpectralField f = dyadic_block(random_field(g, 1, rng), 2);
    for (int m = 1; m <= 3; ++m) {
      // u(2^m x) on the box L/2^m has the same coefficients.
      const Grid gs(2, 64, std::ldexp(L, -m));
      const SpectralField fs(gs, f.coeffs());
      for (double s : {-0.5, 0.0, 1.0, 2.5}) {
        const double ratio = besov_norm(fs, {s, Lebesgue::two}) / besov_norm(f, {s, Lebesgue::two});
        CHECK(rel(ratio, std::pow(2.0, m * (s - 1.0))) < 1e-13);
      }
    }
    const double s1 = -0.3, s2 = 1.7;
    for (double theta : {0.0, 0.25, 0.5, 0.9}) {
      const double mid = besov_norm(f, {theta * s1 + (1 - theta) * s2, Lebesgue::two});
      const double interp = std::pow(besov_norm(f, {s1, Lebesgue::two}), theta) *
                            std::pow(besov_norm(f, {s2, Lebesgue::two}), 1 - theta);
      CHECK(rel(mid, interp) < 1e-13);
    }
  }
}

TEST_CASE("bernstein ratios stay inside the shell") {
  std::mt19937_64 rng(21);
  int violations = 0;
  for (int d : {2, 3}) {
    const Grid g(d, d == 2 ? 64 : 16, 5.0);
    const auto& idx = g.sharp_shell();
    for (int i = 0; i < 10; ++i) {
      const SpectralField f = random_field(g, 1, rng);
      const ShellRange range = shell_range(g);
      for (int j = range.first; j <= range.last; ++j) {
        const SpectralField b = dyadic_block(f, j);
        const double nb = b.l2_norm();
        if (nb == 0.0) continue;
        double kmin = INFINITY, kmax = 0.0;
        for (Eigen::Index m = 0; m < g.modes(); ++m) {
          if (idx(m) != j || g.keep()(m) == 0.0) continue;
          kmin = std::min(kmin, g.kabs()(m));
          kmax = std::max(kmax, g.kabs()(m));
        }
        // ‖∇b‖ via Parseval.
        const double ng = std::sqrt(g.volume() * (b.coeffs().col(0).abs2() * g.k2()).sum());
        const double ratio = ng / nb;
        if (ratio < kmin * (1 - 1e-14) || ratio > kmax * (1 + 1e-14)) ++violations;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("bony decomposition reconstructs the product") {
  std::mt19937_64 rng(2024);
  const Grid g(2, 32, kTwoPi);
  for (int i = 0; i < 20; ++i) {
    const SpectralField u = random_field(g, 1, rng);
    const SpectralField v = random_field(g, 1, rng);
    const SpectralField sum = paraproduct(u, v) + paraproduct(v, u) + remainder(u, v);
    CHECK(rel_l2(sum, product(u, v)) < 1e-10);
  }
  const SpectralField u = random_field(g, 1, rng);
  const SpectralField v = random_field(g, 2, rng);
  const SpectralField sum = paraproduct(u, v) + paraproduct(v, u) + remainder(u, v);
  CHECK(rel_l2(sum, product(u, v)) < 1e-10);
}

TEST_CASE("paraproduct and remainder special cases") {
  const Grid g(2, 32, kTwoPi);
  std::mt19937_64 rng(4);
  SpectralField c(g, 1);
  c.coeffs()(0, 0) = 1.75;
  const SpectralField v = random_field(g, 1, rng);
  // Ṫ_c v = c·v modulo the mean; the mean pairing lives in the remainder.
  SpectralField vbar = v;
  vbar.coeffs()(0, 0) = 0.0;
  CHECK(rel_l2(paraproduct(c, vbar), 1.75 * vbar) < 1e-13);
  CHECK(rel_l2(paraproduct(c, v), 1.75 * vbar) < 1e-13);
  CHECK(std::abs(remainder(c, v).mean() - 1.75 * v.mean()) < 1e-14);
  CHECK(paraproduct(v, SpectralField(g, 1)).l2_norm() == 0.0);

  SpectralField v0 = v;
  v0.coeffs()(0, 0) = 0.0;
  CHECK(remainder(c, v0).l2_norm() < 1e-14);
  // Shells 0 and 4: no overlap in the widened block.
  CHECK(remainder(cosine_mode(g, {1, 0, 0}), cosine_mode(g, {8, 0, 0})).l2_norm() < 1e-14);

  const Grid other(2, 32, 1.0);
  CHECK_THROWS_AS(paraproduct(v, SpectralField(other, 1)), std::invalid_argument);
  CHECK_THROWS_AS(remainder(v, SpectralField(other, 1)), std::invalid_argument);
}

TEST_CASE("high/low split") {
  const Grid g(2, 64, kTwoPi);
  const SpectralField f = cosine_mode(g, {4, 0, 0});
  auto [bf, hf] = highlow_split(f, 1.0);
  CHECK(bf.l2_norm() == 0.0);
  CHECK(same(hf, f, 0.0));

  auto [bf2, hf2] = highlow_split(f, 1e-6);
  CHECK(hf2.l2_norm() == 0.0);

  const SpectralField lo = cosine_mode(g, {5, 0, 0});   // shell 2
  const SpectralField hi = cosine_mode(g, {0, 17, 0});  // shell 4
  const SpectralField mid = cosine_mode(g, {9, 0, 0});  // shell 3
  auto [b3, h3] = highlow_split(lo + mid + hi, 0.125);
  CHECK(same(b3, lo + mid, 0.0));
  CHECK(same(h3, hi, 0.0));

  std::mt19937_64 rng(8);
  const SpectralField r = random_field(g, 2, rng);
  auto [b4, h4] = highlow_split(r, 0.1);
  SpectralField whole = b4 + h4;
  whole.coeffs().row(0) += r.coeffs().row(0);
  CHECK(same(whole, r, 0.0));
  CHECK((b4.coeffs().abs() * h4.coeffs().abs()).maxCoeff() == 0.0);
  CHECK_THROWS(highlow_split(r, 0.0));
}

TEST_CASE("product estimate ratio is scale invariant") {
  std::mt19937_64 rng(100);
  const double L = kTwoPi;
  const Grid g(2, 32, L), gs(2, 32, L / 2);
  const double s1 = 0.5, s2 = 0.75, d = 2.0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SpectralField u = random_field(g, 1, rng, 8.0, false);
    const SpectralField v = random_field(g, 1, rng, 8.0, false);
    auto ratio = [&](const SpectralField& a, const SpectralField& b) {
      return besov_norm(product(a, b), {s1 + s2 - d / 2, Lebesgue::two}) /
             (besov_norm(a, {s1, Lebesgue::two}) * besov_norm(b, {s2, Lebesgue::two}));
    };
    const double r0 = ratio(u, v);
    const double r1 = ratio(SpectralField(gs, u.coeffs()), SpectralField(gs, v.coeffs()));
    worst = std::max(worst, rel(r1, r0));
  }
  CHECK(worst < 1e-8);
}
