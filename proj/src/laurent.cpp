#include "qknot/laurent.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "qknot/errors.hpp"

namespace qknot {

using json = nlohmann::json;

std::string var_name(Var v) {
    switch (v) {
        case Var::A: return "A";
        case Var::Q: return "q";
        case Var::T: return "t";
        case Var::TQuarter: return "tQuarter";
    }
    throw InternalError("unknown Var");
}

Var var_from_name(const std::string& s) {
    if (s == "A") return Var::A;
    if (s == "q") return Var::Q;
    if (s == "t") return Var::T;
    if (s == "tQuarter") return Var::TQuarter;
    throw ValidationError("unknown polynomial variable tag: " + s);
}

Laurent::Laurent(Var v, Terms terms) : var_(v), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) it = terms_.erase(it);
        else ++it;
    }
}

Laurent Laurent::monomial(Var v, long exp, mpz_class coeff) {
    Laurent p(v);
    if (coeff != 0) p.terms_[exp] = std::move(coeff);
    return p;
}

mpz_class Laurent::coeff(long exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

long Laurent::min_exp() const {
    if (terms_.empty()) throw InternalError("min_exp of zero polynomial");
    return terms_.begin()->first;
}

long Laurent::max_exp() const {
    if (terms_.empty()) throw InternalError("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

static void check_same_var(Var a, Var b) {
    if (a != b)
        throw ValidationError("variable mismatch: " + var_name(a) + " vs " + var_name(b));
}

Laurent& Laurent::operator+=(const Laurent& o) {
    check_same_var(var_, o.var_);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    check_same_var(var_, o.var_);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    check_same_var(a.var_, b.var_);
    Laurent out(a.var_);
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) {
            auto it = out.terms_.find(e1 + e2);
            if (it == out.terms_.end()) out.terms_.emplace(e1 + e2, c1 * c2);
            else {
                it->second += c1 * c2;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    return out;
}

Laurent Laurent::negated() const {
    Laurent out(var_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Laurent Laurent::shifted(long shift, const mpz_class& c) const {
    Laurent out(var_);
    if (c == 0) return out;
    for (const auto& [e, co] : terms_) out.terms_.emplace(e + shift, co * c);
    return out;
}

Laurent Laurent::pow(unsigned n) const {
    Laurent out = constant(var_, 1);
    Laurent base = *this;
    while (n) {
        if (n & 1u) out = out * base;
        base = base * base;
        n >>= 1u;
    }
    return out;
}

Laurent Laurent::inverted_variable() const {
    Laurent out(var_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
}

Laurent Laurent::divide_exact(const Laurent& divisor) const {
    check_same_var(var_, divisor.var_);
    if (divisor.is_zero()) throw InternalError("division by zero polynomial");
    Laurent rem = *this;
    Laurent quot(var_);
    const long dmax = divisor.max_exp();
    const mpz_class& dlead = divisor.terms_.rbegin()->second;
    while (!rem.is_zero()) {
        long e = rem.max_exp();
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.terms_.rbegin()->second.get_mpz_t(),
                    dlead.get_mpz_t());
        if (r != 0) throw InternalError("polynomial division has nonzero remainder");
        quot += monomial(var_, e - dmax, q);
        rem -= divisor.shifted(e - dmax, q);
    }
    return quot;
}

std::complex<double> Laurent::eval(std::complex<double> z) const {
    if (z == std::complex<double>(0.0, 0.0)) {
        if (!terms_.empty() && min_exp() < 0)
            throw ValidationError("evaluation at 0 with negative exponents");
    }
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
        std::complex<double> p(1.0, 0.0);
        std::complex<double> base = e >= 0 ? z : 1.0 / z;
        unsigned long n = e >= 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
        while (n) {
            if (n & 1ul) p *= base;
            base *= base;
            n >>= 1ul;
        }
        acc += p * c.get_d();
    }
    return acc;
}

std::string Laurent::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    const std::string v = var_ == Var::TQuarter ? "t^(1/4)" : var_name(var_);
    for (const auto& [e, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        mpz_class a = abs(c);
        first = false;
        if (a != 1 || e == 0) os << a.get_str();
        if (e != 0) {
            if (a != 1) os << "*";
            os << (var_ == Var::TQuarter ? "t" : var_name(var_));
            if (var_ == Var::TQuarter) os << "^(" << e << "/4)";
            else if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

std::string Laurent::to_json() const {
    json terms = json::array();
    for (const auto& [e, c] : terms_) {
        json co;
        if (c.fits_slong_p()) co = c.get_si();
        else co = c.get_str();
        terms.push_back(json::array({e, co}));
    }
    json out;
    out["var"] = var_name(var_);
    out["terms"] = terms;
    return out.dump();
}

Laurent Laurent::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("polynomial JSON parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("var") || !j.contains("terms"))
        throw ValidationError("polynomial JSON must have 'var' and 'terms'");
    Laurent out(var_from_name(j["var"].get<std::string>()));
    long prev = 0;
    bool have_prev = false;
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 2)
            throw ValidationError("polynomial term must be [exponent, coefficient]");
        long e = t[0].get<long>();
        if (have_prev && e <= prev)
            throw ValidationError("polynomial terms must be sorted by exponent, ascending");
        prev = e;
        have_prev = true;
        mpz_class c;
        if (t[1].is_string()) c = mpz_class(t[1].get<std::string>());
        else c = mpz_class(static_cast<long>(t[1].get<long long>()));
        if (c == 0) throw ValidationError("zero coefficient stored in polynomial JSON");
        out.terms_.emplace(e, std::move(c));
    }
    return out;
}

Laurent laurent_convert(const Laurent& p, Var to) {
    const Var from = p.var();
    if (from == to) return p;
    if (from == Var::A && to == Var::Q) {
        Laurent out(Var::Q);
        for (const auto& [e, c] : p.terms()) {
            if (e % 2 != 0)
                throw ValidationError("A->q substitution needs even exponents; offending exponent " +
                                      std::to_string(e));
            long h = e / 2;  // A^2 -> -q^-1
            out += Laurent::monomial(Var::Q, -h, (h % 2 == 0) ? c : -c);
        }
        return out;
    }
    if (from == Var::A && (to == Var::TQuarter || to == Var::T)) {
        Laurent::Terms t;
        for (const auto& [e, c] : p.terms()) t.emplace(-e, c);  // A = t^(-1/4)
        Laurent quarter(Var::TQuarter, std::move(t));
        if (to == Var::TQuarter) return quarter;
        return laurent_convert(quarter, Var::T);
    }
    if (from == Var::TQuarter && to == Var::T) {
        Laurent out(Var::T);
        for (const auto& [e, c] : p.terms()) {
            if (e % 4 != 0)
                throw ValidationError(
                    "tQuarter->t needs exponents divisible by 4; offending exponent " +
                    std::to_string(e));
            out += Laurent::monomial(Var::T, e / 4, c);
        }
        return out;
    }
    if (from == Var::T && to == Var::TQuarter) {
        Laurent out(Var::TQuarter);
        for (const auto& [e, c] : p.terms()) out += Laurent::monomial(Var::TQuarter, 4 * e, c);
        return out;
    }
    throw ValidationError("unsupported conversion " + var_name(from) + " -> " + var_name(to));
}

}  // namespace qknot
