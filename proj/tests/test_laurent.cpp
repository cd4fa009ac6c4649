#include <doctest.h>

#include <complex>
#include <random>

#include "qknot/errors.hpp"
#include "qknot/laurent.hpp"

using namespace qknot;

namespace {

Laurent random_poly(std::mt19937& gen, Var v = Var::Q) {
    std::uniform_int_distribution<int> nterms(0, 6), exp(-8, 8), coeff(-9, 9);
    Laurent p(v);
    const int n = nterms(gen);
    for (int t = 0; t < n; ++t) p += Laurent::monomial(v, exp(gen), coeff(gen));
    return p;
}

}  // namespace

TEST_CASE("laurent arithmetic is an exact commutative ring") {
    std::mt19937 gen(1);
    for (int trial = 0; trial < 200; ++trial) {
        const Laurent p = random_poly(gen), r = random_poly(gen), s = random_poly(gen);
        CHECK((p + r) * s == p * s + r * s);
        CHECK(p * r == r * p);
        CHECK(p + r == r + p);
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("no zero coefficients are stored") {
    Laurent p(Var::A);
    p += Laurent::monomial(Var::A, 3, 5);
    p += Laurent::monomial(Var::A, 3, -5);
    CHECK(p.is_zero());
    CHECK(p.terms().empty());
    CHECK(Laurent::monomial(Var::A, 2, 0).is_zero());
}

TEST_CASE("evaluation at unit-circle points") {
    Laurent p(Var::Q);  // q + q^-1
    p += Laurent::monomial(Var::Q, 1, 1);
    p += Laurent::monomial(Var::Q, -1, 1);
    CHECK(std::abs(p.eval({1.0, 0.0}) - std::complex<double>(2.0, 0.0)) < 1e-12);
    CHECK(std::abs(p.eval({0.0, 1.0})) < 1e-12);  // i + 1/i = 0
}

TEST_CASE("evaluation is multiplicative") {
    std::mt19937 gen(2);
    std::uniform_real_distribution<double> angle(0.0, 6.28);
    for (int trial = 0; trial < 100; ++trial) {
        const Laurent p = random_poly(gen), r = random_poly(gen);
        const double th = angle(gen);
        const std::complex<double> z(std::cos(th), std::sin(th));
        const auto lhs = (p * r).eval(z);
        const auto rhs = p.eval(z) * r.eval(z);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("evaluation at zero rejects negative exponents") {
    Laurent p = Laurent::monomial(Var::Q, -1, 1);
    CHECK_THROWS_AS(p.eval({0.0, 0.0}), ValidationError);
    CHECK(std::abs(Laurent::monomial(Var::Q, 2, 3).eval({0.0, 0.0})) < 1e-12);
}

TEST_CASE("change of variables A^2 -> -q^-1") {
    // the circle value: -A^2 - A^-2 becomes q + q^-1
    Laurent circle(Var::A);
    circle += Laurent::monomial(Var::A, 2, -1);
    circle += Laurent::monomial(Var::A, -2, -1);
    Laurent expected(Var::Q);
    expected += Laurent::monomial(Var::Q, 1, 1);
    expected += Laurent::monomial(Var::Q, -1, 1);
    CHECK(laurent_convert(circle, Var::Q) == expected);

    CHECK(laurent_convert(Laurent::constant(Var::A, 1), Var::Q) == Laurent::constant(Var::Q, 1));
    CHECK(laurent_convert(Laurent::constant(Var::A, 1), Var::T) == Laurent::constant(Var::T, 1));

    CHECK_THROWS_AS(laurent_convert(Laurent::monomial(Var::A, 3, 1), Var::Q), ValidationError);
}

TEST_CASE("change of variables A -> t^(-1/4)") {
    // f of the left trefoil: -A^16 + A^12 + A^4  ->  -t^-4 + t^-3 + t^-1
    Laurent f(Var::A);
    f += Laurent::monomial(Var::A, 16, -1);
    f += Laurent::monomial(Var::A, 12, 1);
    f += Laurent::monomial(Var::A, 4, 1);
    Laurent expected(Var::T);
    expected += Laurent::monomial(Var::T, -4, -1);
    expected += Laurent::monomial(Var::T, -3, 1);
    expected += Laurent::monomial(Var::T, -1, 1);
    CHECK(laurent_convert(f, Var::T) == expected);

    // odd A-exponents stay in quarter units; a strict t target is refused
    Laurent h = Laurent::monomial(Var::A, 2, -1) + Laurent::monomial(Var::A, 10, -1);
    const Laurent quarter = laurent_convert(h, Var::TQuarter);
    CHECK(quarter.coeff(-2) == -1);
    CHECK(quarter.coeff(-10) == -1);
    CHECK_THROWS_AS(laurent_convert(h, Var::T), ValidationError);
    CHECK(laurent_convert(laurent_convert(f, Var::T), Var::TQuarter) ==
          laurent_convert(f, Var::TQuarter));
}

TEST_CASE("exact division") {
    Laurent delta(Var::A);
    delta += Laurent::monomial(Var::A, 2, -1);
    delta += Laurent::monomial(Var::A, -2, -1);
    std::mt19937 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Laurent p = random_poly(gen, Var::A);
        if (p.is_zero()) continue;
        CHECK((p * delta).divide_exact(delta) == p);
    }
    Laurent not_divisible = Laurent::monomial(Var::A, 1, 1);
    CHECK_THROWS_AS(not_divisible.divide_exact(delta), InternalError);
}

TEST_CASE("JSON round trip is bit exact") {
    std::mt19937 gen(4);
    for (int trial = 0; trial < 100; ++trial) {
        const Laurent p = random_poly(gen, trial % 2 ? Var::A : Var::Q);
        const std::string s = p.to_json();
        CHECK(Laurent::from_json(s) == p);
        CHECK(Laurent::from_json(s).to_json() == s);
    }
    // coefficients beyond int64 travel as decimal strings
    Laurent big = Laurent::monomial(Var::Q, 0, mpz_class("123456789012345678901234567890"));
    CHECK(Laurent::from_json(big.to_json()) == big);
    CHECK(big.to_json().find("\"123456789012345678901234567890\"") != std::string::npos);

    CHECK_THROWS_AS(Laurent::from_json(R"({"var":"q","terms":[[1,1],[0,1]]})"),
                    ValidationError);  // not ascending
    CHECK_THROWS_AS(Laurent::from_json(R"({"var":"z","terms":[]})"), ValidationError);
}

TEST_CASE("variable mismatch is rejected") {
    const Laurent a = Laurent::constant(Var::A, 1);
    const Laurent q = Laurent::constant(Var::Q, 1);
    CHECK_THROWS_AS(a * q, ValidationError);
}
