#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qknot/errors.hpp"
#include "qknot/laurent.hpp"

namespace qknot {

// The motif families that get quantized. A basis ket is a family tag plus the
// motif's canonical byte encoding; encodings are injective per family, so ket
// equality is motif equality.
enum class Family : std::uint8_t { Mosaic, Gauss, Graph, Word, EnhancedState };

std::string family_name(Family f);

struct BasisKet {
    Family family;
    std::string payload;

    friend bool operator==(const BasisKet&, const BasisKet&) = default;
    friend bool operator<(const BasisKet& a, const BasisKet& b) {
        if (a.family != b.family) return a.family < b.family;
        return a.payload < b.payload;
    }
};

using Complex = std::complex<double>;

// Amplitude carriers: floating complex numbers, or exact Laurent polynomials
// evaluated later on the unit circle (where conjugation negates exponents).
inline Complex amp_conj(const Complex& a) { return std::conj(a); }
inline Laurent amp_conj(const Laurent& a) { return a.inverted_variable(); }
inline bool amp_is_zero(const Complex& a) { return a == Complex(0.0, 0.0); }
inline bool amp_is_zero(const Laurent& a) { return a.is_zero(); }

// Finite-support vector in the Hilbert space spanned by one family's kets.
// Zero amplitudes are never stored.
template <typename Amp>
class StateVector {
public:
    explicit StateVector(Family f) : family_(f) {}

    static StateVector ket(BasisKet k, Amp one) {
        StateVector v(k.family);
        v.add(std::move(k), std::move(one));
        return v;
    }

    static StateVector superpose(Family f, std::vector<std::pair<Amp, BasisKet>> parts) {
        StateVector v(f);
        for (auto& [a, k] : parts) v.add(std::move(k), a);
        return v;
    }

    Family family() const { return family_; }
    const std::map<BasisKet, Amp>& amplitudes() const { return amps_; }
    size_t support_size() const { return amps_.size(); }

    void add(BasisKet k, const Amp& a) {
        if (k.family != family_) throw ValidationError("ket family does not match vector family");
        if (amp_is_zero(a)) return;
        auto it = amps_.find(k);
        if (it == amps_.end()) {
            amps_.emplace(std::move(k), a);
        } else {
            it->second += a;
            if (amp_is_zero(it->second)) amps_.erase(it);
        }
    }

    // Hermitian inner product, conjugate-linear in *this (the bra side)
    Amp inner_product(const StateVector& v) const {
        if (family_ != v.family_) throw ValidationError("inner product across families");
        std::optional<Amp> acc;
        for (const auto& [k, a] : amps_) {
            auto it = v.amps_.find(k);
            if (it == v.amps_.end()) continue;
            Amp term = amp_conj(a) * it->second;
            if (!acc) acc = std::move(term);
            else *acc += term;
        }
        if (acc) return *acc;
        if constexpr (std::is_same_v<Amp, Laurent>) return Laurent(Var::Q);
        else return Amp{};
    }

private:
    Family family_;
    std::map<BasisKet, Amp> amps_;
};

// A basis permutation given by a partial injective payload map with declared
// inverse; applying it transports amplitudes along the forward map.
class PermutationUnitary {
public:
    using PayloadMap = std::function<std::optional<std::string>(const std::string&)>;

    PermutationUnitary(Family f, PayloadMap forward, PayloadMap inverse)
        : family_(f), forward_(std::move(forward)), inverse_(std::move(inverse)) {}

    Family family() const { return family_; }

    BasisKet map_ket(const BasisKet& k) const {
        if (k.family != family_) throw ValidationError("ket family does not match unitary family");
        auto out = forward_(k.payload);
        if (!out)
            throw ValidationError("ket outside permutation domain (family " + family_name(family_) +
                                  ")");
        return BasisKet{family_, *out};
    }

    BasisKet map_ket_inverse(const BasisKet& k) const {
        if (k.family != family_) throw ValidationError("ket family does not match unitary family");
        auto out = inverse_(k.payload);
        if (!out) throw ValidationError("ket outside permutation domain");
        return BasisKet{family_, *out};
    }

    template <typename Amp>
    StateVector<Amp> apply(const StateVector<Amp>& v) const {
        StateVector<Amp> out(v.family());
        for (const auto& [k, a] : v.amplitudes()) out.add(map_ket(k), a);
        return out;
    }

    static PermutationUnitary compose(const PermutationUnitary& g, const PermutationUnitary& h) {
        if (g.family_ != h.family_) throw ValidationError("composing unitaries across families");
        auto fwd = [g, h](const std::string& p) -> std::optional<std::string> {
            auto mid = h.forward_(p);
            if (!mid) return std::nullopt;
            return g.forward_(*mid);
        };
        auto inv = [g, h](const std::string& p) -> std::optional<std::string> {
            auto mid = g.inverse_(p);
            if (!mid) return std::nullopt;
            return h.inverse_(*mid);
        };
        return PermutationUnitary(g.family_, fwd, inv);
    }

private:
    Family family_;
    PayloadMap forward_, inverse_;
};

// U|k> = lambda(k)|k> with |lambda| = 1 within 1e-12, checked on application.
class DiagonalUnitary {
public:
    using EigenFn = std::function<Complex(const BasisKet&)>;

    DiagonalUnitary(Family f, EigenFn eigen) : family_(f), eigen_(std::move(eigen)) {}

    Family family() const { return family_; }

    Complex eigenvalue(const BasisKet& k) const {
        if (k.family != family_) throw ValidationError("ket family does not match unitary family");
        Complex lambda = eigen_(k);
        if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
            throw InternalError("diagonal unitary eigenvalue is not unit-modulus");
        return lambda;
    }

    StateVector<Complex> apply(const StateVector<Complex>& v) const {
        StateVector<Complex> out(v.family());
        for (const auto& [k, a] : v.amplitudes()) out.add(k, eigenvalue(k) * a);
        return out;
    }

private:
    Family family_;
    EigenFn eigen_;
};

}  // namespace qknot
