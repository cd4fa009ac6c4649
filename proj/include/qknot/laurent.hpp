#pragma once

#include <complex>
#include <map>
#include <string>

#include <gmpxx.h>

namespace qknot {

// Formal variable of a Laurent polynomial. TQuarter measures exponents in
// units of t^(1/4), so a T polynomial equals the TQuarter one with all
// exponents multiplied by 4.
enum class Var { A, Q, T, TQuarter };

std::string var_name(Var v);
Var var_from_name(const std::string& s);

// Exact one-variable Laurent polynomial with arbitrary-precision integer
// coefficients. Zero coefficients are never stored; equality is term-set
// equality on the same variable.
class Laurent {
public:
    using Terms = std::map<long, mpz_class>;

    explicit Laurent(Var v = Var::A) : var_(v) {}
    Laurent(Var v, Terms terms);

    static Laurent monomial(Var v, long exp, mpz_class coeff);
    static Laurent constant(Var v, mpz_class c) { return monomial(v, 0, std::move(c)); }

    Var var() const { return var_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    mpz_class coeff(long exp) const;
    long min_exp() const;  // throws on zero polynomial
    long max_exp() const;

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.var_ == b.var_ && a.terms_ == b.terms_;
    }

    Laurent negated() const;
    // multiply by c * x^shift
    Laurent shifted(long shift, const mpz_class& c = 1) const;
    Laurent pow(unsigned n) const;
    // substitute x -> x^-1
    Laurent inverted_variable() const;

    // Exact division; throws InternalError if the remainder is nonzero.
    Laurent divide_exact(const Laurent& divisor) const;

    // Evaluate at a nonzero complex point with exact integer exponents.
    std::complex<double> eval(std::complex<double> z) const;

    std::string to_string() const;

    // {"var":"q","terms":[[exp,coeff],...]} ascending by exponent; coefficients
    // that fit in int64 are JSON numbers, larger ones decimal strings.
    std::string to_json() const;
    static Laurent from_json(const std::string& text);

private:
    Var var_;
    Terms terms_;
};

// Exact change of variables:
//   A -> Q        : A^2 |-> -q^-1 (all exponents must be even)
//   A -> TQuarter : A = t^(-1/4), exponent e |-> -e
//   A -> T        : as TQuarter, then exponents must be divisible by 4
//   TQuarter -> T : exponents divisible by 4
// Anything else (other than the identity) is rejected.
Laurent laurent_convert(const Laurent& p, Var to);

}  // namespace qknot
