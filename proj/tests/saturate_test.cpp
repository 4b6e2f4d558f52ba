#include "mlqsl/saturate.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

using namespace mlqsl;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("saturating state at zero overlap is the balanced superposition") {
  const SaturatingState s = saturating_state(Fidelity(0.0));
  CHECK(s.a1_sq == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.gap_time == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(s.theta_opt == doctest::Approx(-0.56691150494100941).epsilon(1e-12));
}

TEST_CASE("saturating state reproduces its target fidelity") {
  for (const double eps : {0.05, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    const SaturatingState s = saturating_state(Fidelity(eps));
    CAPTURE(eps);
    CHECK(fidelity_two_level(s.a1_sq, s.gap_time) == doctest::Approx(eps).epsilon(1e-10));
  }
}

TEST_CASE("two-level fidelity closed form at reference points") {
  CHECK(fidelity_two_level(0.5, kPi) == 0.0);
  CHECK(fidelity_two_level(0.0, 17.3) == 1.0);
  CHECK(fidelity_two_level(0.5, 0.5 * kPi) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(fidelity_two_level(1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(fidelity_two_level(0.5, -1.0), std::domain_error);
}

TEST_CASE("excited population lies in its admissible interval") {
  for (int i = 0; i <= 40; ++i) {
    const double eps = 0.999 * static_cast<double>(i) / 40.0;
    const SaturatingState s = saturating_state(Fidelity(eps));
    CAPTURE(eps);
    CHECK(s.a1_sq <= 0.5);
    CHECK(s.a1_sq >= 0.5 * (1.0 - std::sqrt(eps)) - 1e-12);
  }
}

TEST_CASE("tangent form of the excited population matches the half-angle form") {
  for (const double eps : {0.0, 0.1, 0.4, 0.7, 0.95}) {
    const SaturatingState s = saturating_state(Fidelity(eps));
    const double tan_form = a1_sq_tan_form(s.theta_opt, s.gap_time);
    CAPTURE(eps);
    CHECK(std::fabs(tan_form - s.a1_sq) <= 1e-9);
  }
}

TEST_CASE("overlap phase at the gap time equals the anchor angle") {
  for (const double eps : {0.1, 0.5, 0.9}) {
    const SaturatingState s = saturating_state(Fidelity(eps));
    const std::complex<double> overlap =
        (1.0 - s.a1_sq) +
        s.a1_sq * std::exp(std::complex<double>(0.0, -s.gap_time));
    CAPTURE(eps);
    CHECK(std::fabs(std::norm(overlap) - eps) <= 1e-10);
    CHECK(std::fabs(std::arg(overlap) - s.theta_opt) <= 1e-9);
  }
}

TEST_CASE("saturating state links the other optimizer coordinates") {
  for (const double eps : {0.1, 0.5, 0.9}) {
    const SaturatingState s = saturating_state(Fidelity(eps));
    CAPTURE(eps);
    // Half the gap time is the y-form minimizer.
    CHECK(std::fabs(0.5 * s.gap_time - alpha_newton(Fidelity(eps)).argopt) <= 1e-9);
    // The excited population is the legacy backend's root.
    const AlphaResult glm = alpha_glm_legacy(Fidelity(eps), GlmRootMethod::brent());
    REQUIRE(glm.converged());
    CHECK(std::fabs(s.a1_sq - glm.argopt) <= 1e-9);
  }
}

TEST_CASE("saturating state rejects full overlap") {
  CHECK_THROWS_AS(saturating_state(Fidelity(1.0)), std::domain_error);
}

TEST_CASE("finite system validates its levels") {
  CHECK_THROWS_AS(FiniteSystem({}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSystem({{0.0, 0.6, 0.0}, {1.0, 0.3, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSystem({{0.0, 1.2, 0.0}, {1.0, -0.2, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSystem({{std::nan(""), 1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSystem({{0.0, 1.0, kInf}}), std::invalid_argument);
  CHECK_NOTHROW(FiniteSystem({{0.0, 0.5, 0.0}, {1.0, 0.5, 1.0}}));
}

TEST_CASE("fidelity ignores the level phases") {
  const FiniteSystem plain({{0.0, 0.4, 0.0}, {1.3, 0.6, 0.0}});
  const FiniteSystem phased({{0.0, 0.4, 2.1}, {1.3, 0.6, -0.7}});
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.1 * static_cast<double>(i);
    CHECK(plain.fidelity_at(t) == phased.fidelity_at(t));
  }
}

TEST_CASE("fidelity starts at unity") {
  const FiniteSystem sys({{0.2, 0.5, 0.0}, {1.7, 0.5, 0.0}});
  CHECK(sys.fidelity_at(0.0) == 1.0);
  const FiniteSystem uneven({{0.2, 0.3, 0.0}, {1.7, 0.7, 0.0}});
  CHECK(uneven.fidelity_at(0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("energy statistics and reference selection") {
  const FiniteSystem sys({{0.0, 0.0, 0.0}, {1.0, 0.5, 0.0}, {2.0, 0.5, 0.0}});
  CHECK(sys.min_energy() == 0.0);
  CHECK(sys.min_populated_energy() == 1.0);
  CHECK(sys.max_populated_energy() == 2.0);
  CHECK(sys.mean_energy() == doctest::Approx(1.5).epsilon(1e-15));
  // Threshold above every population: falls back to the spectrum minimum.
  CHECK(sys.min_populated_energy(0.6) == 0.0);
}

TEST_CASE("bound against a frozen state and a depopulated ground level") {
  const FiniteSystem frozen({{3.0, 1.0, 0.0}});
  CHECK(ml_bound(frozen, Fidelity(0.5)) == kInf);
  CHECK(ml_bound(frozen, Fidelity(1.0)) == 0.0);

  const FiniteSystem sys({{0.0, 0.0, 0.0}, {1.0, 0.5, 0.0}, {2.0, 0.5, 0.0}});
  const double standard = ml_bound(sys, Fidelity(0.5), false);
  const double strengthened = ml_bound(sys, Fidelity(0.5), true);
  CHECK(strengthened == doctest::Approx(3.0 * standard).epsilon(1e-12));
  CHECK(ml_bound(sys, Fidelity(0.5), true, 0.6) == doctest::Approx(standard).epsilon(1e-12));
}

TEST_CASE("embedded saturating state meets its bound exactly") {
  const SaturatingState s = saturating_state(Fidelity(0.0));
  const FiniteSystem sys = embed_two_level(s);
  CHECK(ml_bound(sys, Fidelity(0.0)) == doctest::Approx(kPi).epsilon(1e-12));

  const SaturatingState half = saturating_state(Fidelity(0.5));
  const FiniteSystem sys_half = embed_two_level(half);
  const double bound = ml_bound(sys_half, Fidelity(0.5));
  const auto passage = first_passage_time(sys_half, Fidelity(0.5), 5.0);
  REQUIRE(passage.has_value());
  CHECK(std::fabs(*passage - half.gap_time) <= 1e-9);
  CHECK(std::fabs(*passage - bound) <= 1e-8 * bound);
}

TEST_CASE("first passage detects a tangential touch") {
  // At eps = 0 the balanced state's fidelity only touches zero; a plain
  // threshold scan would miss it entirely.
  const FiniteSystem sys = embed_two_level(saturating_state(Fidelity(0.0)));
  const auto passage = first_passage_time(sys, Fidelity(0.0), 5.0);
  REQUIRE(passage.has_value());
  CHECK(std::fabs(*passage - kPi) <= 1e-9);
}

TEST_CASE("first passage against the closed form of a lopsided state") {
  const FiniteSystem sys({{0.0, 0.7, 0.0}, {2.0, 0.3, 0.0}});
  // F(t) = 0.58 + 0.42 cos(2t); solve F = 0.5 analytically.
  const double expect = 0.5 * std::acos((0.5 - 0.58) / 0.42);
  const auto passage = first_passage_time(sys, Fidelity(0.5), 3.0);
  REQUIRE(passage.has_value());
  CHECK(std::fabs(*passage - expect) <= 1e-9);
  // 0.1 lies below the floor of F: unreachable at any horizon.
  CHECK_FALSE(first_passage_time(sys, Fidelity(0.1), 20.0).has_value());
}

TEST_CASE("first passage of a stationary state never arrives") {
  const FiniteSystem ground({{2.5, 1.0, 0.0}});
  CHECK_FALSE(first_passage_time(ground, Fidelity(0.5), 10.0).has_value());
  CHECK(first_passage_time(ground, Fidelity(1.0), 10.0) == 0.0);
}

TEST_CASE("batched passages match single queries in input order") {
  const FiniteSystem sys = embed_two_level(saturating_state(Fidelity(0.3)));
  const std::vector<double> eps = {0.9, 0.3, 1.0, 0.5, 0.9};
  const auto batch = first_passage_times(sys, eps, 6.0, 0);
  REQUIRE(batch.size() == eps.size());
  for (size_t i = 0; i < eps.size(); ++i) {
    const auto single = first_passage_time(sys, Fidelity(eps[i]), 6.0);
    CAPTURE(i);
    REQUIRE(batch[i].has_value() == single.has_value());
    if (single.has_value()) CHECK(*batch[i] == doctest::Approx(*single).epsilon(1e-12));
  }
  CHECK(*batch[2] == 0.0);
}

TEST_CASE("passage scan validates its arguments") {
  const FiniteSystem sys({{0.0, 0.5, 0.0}, {1.0, 0.5, 0.0}});
  CHECK_THROWS_AS(first_passage_time(sys, Fidelity(0.5), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(first_passage_time(sys, Fidelity(0.5), kInf), std::invalid_argument);
  CHECK_THROWS_AS(first_passage_time(sys, Fidelity(0.5), 5.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(first_passage_time(sys, Fidelity(0.5), 5.0, -3), std::invalid_argument);
  CHECK_THROWS_AS(first_passage_times(sys, {0.5, 2.0}, 5.0, 0), std::domain_error);
  CHECK_NOTHROW(first_passage_time(sys, Fidelity(0.5), 5.0, 2));
}

TEST_CASE("embedding produces the declared two-level system") {
  const SaturatingState s = saturating_state(Fidelity(0.25));
  const FiniteSystem sys = embed_two_level(s, 1.0, 3.5);
  REQUIRE(sys.levels().size() == 2);
  CHECK(sys.levels()[0].energy == 1.0);
  CHECK(sys.levels()[1].energy == 3.5);
  CHECK(sys.levels()[1].population == doctest::Approx(s.a1_sq).epsilon(1e-15));
  CHECK(sys.levels()[0].phase == 0.0);
}
