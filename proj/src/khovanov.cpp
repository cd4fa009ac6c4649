#include "qknot/khovanov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "qknot/errors.hpp"

namespace qknot {

using json = nlohmann::json;

namespace {

int env_cap(const char* name, int fallback) {
    if (const char* s = std::getenv(name)) {
        int v = std::atoi(s);
        if (v > 0) return v;
    }
    return fallback;
}

std::uint64_t state_key(std::uint32_t smoothing, std::uint32_t labels) {
    return (static_cast<std::uint64_t>(smoothing) << 32) | labels;
}

struct Indexed {
    std::map<Bigrading, std::vector<EnhancedState>> buckets;
    std::unordered_map<std::uint64_t, int> position;  // key -> index within its bucket
};

Indexed index_states(const PlanarDiagram& d) {
    Indexed out;
    for_each_enhanced_state(d, [&](const EnhancedState& s) {
        auto& bucket = out.buckets[{s.i, s.j}];
        out.position.emplace(state_key(s.smoothing, s.labels), static_cast<int>(bucket.size()));
        bucket.push_back(s);
    });
    return out;
}

// differential images of one enhanced state; loop structures per smoothing are
// precomputed by the caller
void emit_boundary(const PlanarDiagram& d, const std::vector<LoopStructure>& loops,
                   const Indexed& ix, const EnhancedState& s, int src_pos,
                   SparseIntMatrix& mat) {
    const int c = d.crossing_count();
    const LoopStructure& ls = loops[s.smoothing];
    for (int k = 0; k < c; ++k) {
        if (s.smoothing >> k & 1u) continue;
        const std::uint32_t s2 = s.smoothing | (1u << k);
        const LoopStructure& ls2 = loops[s2];
        const int sign = (__builtin_popcount(s.smoothing & ((1u << k) - 1u)) % 2 == 0) ? 1 : -1;
        const auto& t = d.crossings()[k];
        const int la = ls.loop_of_arc[t.a];
        const int lc = ls.loop_of_arc[t.c];
        // labels of untouched loops carry over; free loops occupy the same
        // trailing positions on both sides
        const int nl2 = ls2.loop_count;
        auto carry = [&](std::uint32_t fresh_bits, int skip1, int skip2) {
            std::uint32_t out = fresh_bits;
            for (int arc = 1; arc <= d.arc_count(); ++arc) {
                int li = ls.loop_of_arc[arc];
                if (li == skip1 || li == skip2) continue;
                if (s.labels >> li & 1u) out |= 1u << ls2.loop_of_arc[arc];
            }
            const int real1 = ls.loop_count - d.free_loops();
            const int real2 = nl2 - d.free_loops();
            for (int f = 0; f < d.free_loops(); ++f)
                if (s.labels >> (real1 + f) & 1u) out |= 1u << (real2 + f);
            return out;
        };
        if (la != lc) {
            // merge la, lc -> loop of arc a in s2
            const bool xa = s.labels >> la & 1u;
            const bool xc = s.labels >> lc & 1u;
            if (xa && xc) continue;  // m(X,X) = 0
            const bool xm = xa || xc;
            std::uint32_t fresh = xm ? (1u << ls2.loop_of_arc[t.a]) : 0u;
            std::uint32_t labels2 = carry(fresh, la, lc);
            int row = ix.position.at(state_key(s2, labels2));
            mat.entries.push_back({row, src_pos, sign});
        } else {
            // split la -> loops of arcs a and b in s2
            const int t1 = ls2.loop_of_arc[t.a];
            const int t2 = ls2.loop_of_arc[t.b];
            if (t1 == t2)
                throw ValidationError("resmoothing crossing " + std::to_string(k) +
                                      " does not split a loop; diagram is not planar");
            const bool xs = s.labels >> la & 1u;
            if (xs) {
                // Delta(X) = X x X
                std::uint32_t labels2 = carry((1u << t1) | (1u << t2), la, la);
                mat.entries.push_back({ix.position.at(state_key(s2, labels2)), src_pos, sign});
            } else {
                // Delta(1) = 1 x X + X x 1
                std::uint32_t base = carry(0u, la, la);
                mat.entries.push_back(
                    {ix.position.at(state_key(s2, base | (1u << t2))), src_pos, sign});
                mat.entries.push_back(
                    {ix.position.at(state_key(s2, base | (1u << t1))), src_pos, sign});
            }
        }
    }
}

ChainComplex build_impl(const PlanarDiagram& d, bool parallel) {
    if (d.crossing_count() > homology_cap())
        throw CapExceeded("diagram has " + std::to_string(d.crossing_count()) +
                          " crossings, homology cap is " + std::to_string(homology_cap()) +
                          " (QKNOT_HOMOLOGY_CAP overrides)");
    ChainComplex cx;
    cx.diagram = d;
    Indexed ix = index_states(d);
    std::vector<LoopStructure> loops(1ull << d.crossing_count());
    for (std::uint32_t s = 0; s < loops.size(); ++s) loops[s] = loops_of(d, s);

    std::vector<Bigrading> keys;
    for (const auto& [ij, bucket] : ix.buckets) keys.push_back(ij);
    std::vector<SparseIntMatrix> mats(keys.size());

    auto build_bucket = [&](size_t bi) {
        const Bigrading ij = keys[bi];
        const auto& bucket = ix.buckets.at(ij);
        SparseIntMatrix m;
        m.cols = static_cast<int>(bucket.size());
        const Bigrading tgt{ij.first + 1, ij.second};
        auto it = ix.buckets.find(tgt);
        m.rows = it == ix.buckets.end() ? 0 : static_cast<int>(it->second.size());
        for (int col = 0; col < m.cols; ++col)
            emit_boundary(d, loops, ix, bucket[col], col, m);
        mats[bi] = std::move(m);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(keys.size()); ++bi)
            build_bucket(static_cast<size_t>(bi));
    } else {
        for (size_t bi = 0; bi < keys.size(); ++bi) build_bucket(bi);
    }
    cx.buckets = std::move(ix.buckets);
    for (size_t bi = 0; bi < keys.size(); ++bi)
        if (!mats[bi].entries.empty() || mats[bi].rows > 0)
            cx.boundary.emplace(keys[bi], std::move(mats[bi]));
    return cx;
}

using DenseMat = std::vector<std::vector<mpz_class>>;

DenseMat to_dense(const SparseIntMatrix& m) {
    DenseMat out(m.rows, std::vector<mpz_class>(m.cols));
    for (const auto& e : m.entries) out[e.row][e.col] += e.value;
    return out;
}

// fraction-free Bareiss elimination; exact, integer-only
int rank_bareiss(DenseMat m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int rank = 0;
    mpz_class prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        for (int i = r + 1; i < rows; ++i) {
            for (int jj = c + 1; jj < cols; ++jj) {
                mpz_class num = m[i][jj] * m[r][c] - m[i][c] * m[r][jj];
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                m[i][jj] = std::move(q);
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
        ++rank;
    }
    return rank;
}

// invariant factors of the Smith normal form, in divisibility order
std::vector<long> smith_invariant_factors(DenseMat m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<long> out;
    int t = 0;
    while (t < rows && t < cols) {
        // locate smallest nonzero |entry| in the remaining submatrix
        int pr = -1, pc = -1;
        mpz_class best;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                mpz_class a = abs(m[i][j]);
                if (pr < 0 || a < best) {
                    best = a;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;
        std::swap(m[t], m[pr]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                mpz_class q = m[i][t] / m[t][t];
                for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {  // remainder smaller than pivot: swap up
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                mpz_class q = m[t][j] / m[t][t];
                for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
        }
        // divisibility: fold any nondividing entry into the pivot column
        for (int i = t + 1; i < rows; ++i)
            for (int j = t + 1; j < cols; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (int jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                    clean = false;
                }
        if (!clean) continue;  // redo reduction with the widened pivot row
        mpz_class v = abs(m[t][t]);
        if (!v.fits_slong_p()) throw InternalError("invariant factor exceeds long");
        out.push_back(v.get_si());
        ++t;
    }
    return out;
}

HomologyTable homology_impl(const ChainComplex& cx, Torsion torsion, bool parallel) {
    std::vector<Bigrading> keys;
    for (const auto& [ij, bucket] : cx.buckets) keys.push_back(ij);
    struct Cell {
        int betti = 0;
        std::optional<std::vector<long>> tors;
        bool keep = false;
    };
    std::vector<Cell> cells(keys.size());
    static const SparseIntMatrix kEmpty;
    auto matrix_at = [&](Bigrading ij) -> const SparseIntMatrix& {
        auto it = cx.boundary.find(ij);
        return it == cx.boundary.end() ? kEmpty : it->second;
    };
    auto work = [&](size_t n) {
        const Bigrading ij = keys[n];
        const int dim = cx.dim(ij);
        const SparseIntMatrix& out_m = matrix_at(ij);
        const SparseIntMatrix& in_m = matrix_at({ij.first - 1, ij.second});
        Cell cell;
        const int rank_out = out_m.entries.empty() ? 0 : rank_bareiss(to_dense(out_m));
        const int rank_in = in_m.entries.empty() ? 0 : rank_bareiss(to_dense(in_m));
        cell.betti = dim - rank_out - rank_in;
        if (torsion == Torsion::Capped) {
            if (in_m.rows <= torsion_dim_cap() && in_m.cols <= torsion_dim_cap()) {
                std::vector<long> factors =
                    in_m.entries.empty() ? std::vector<long>{} : smith_invariant_factors(to_dense(in_m));
                std::vector<long> nontrivial;
                for (long f : factors)
                    if (f > 1) nontrivial.push_back(f);
                cell.tors = std::move(nontrivial);
            }
        }
        cell.keep = cell.betti != 0 || (cell.tors && !cell.tors->empty());
        cells[n] = std::move(cell);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t n = 0; n < static_cast<std::int64_t>(keys.size()); ++n)
            work(static_cast<size_t>(n));
    } else {
        for (size_t n = 0; n < keys.size(); ++n) work(n);
    }
    HomologyTable table;
    std::vector<size_t> order(keys.size());
    for (size_t n = 0; n < order.size(); ++n) order[n] = n;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return std::pair(keys[x].second, keys[x].first) < std::pair(keys[y].second, keys[y].first);
    });
    for (size_t n : order) {
        if (!cells[n].keep) continue;
        table.rows.push_back({keys[n].first, keys[n].second, cells[n].betti, cells[n].tors});
    }
    return table;
}

}  // namespace

int homology_cap() {
    static const int cap = env_cap("QKNOT_HOMOLOGY_CAP", 14);
    return cap;
}

int torsion_dim_cap() {
    static const int cap = env_cap("QKNOT_TORSION_CAP", 512);
    return cap;
}

ChainComplex build_complex(const PlanarDiagram& d) { return build_impl(d, true); }
ChainComplex build_complex_serial(const PlanarDiagram& d) { return build_impl(d, false); }

void assert_dd_zero(const ChainComplex& cx) {
    for (const auto& [ij, m1] : cx.boundary) {
        auto it = cx.boundary.find({ij.first + 1, ij.second});
        if (it == cx.boundary.end()) continue;
        const SparseIntMatrix& m2 = it->second;
        std::map<std::pair<int, int>, long> product;
        std::vector<std::vector<std::pair<int, int>>> by_col(m1.rows);
        for (const auto& e : m2.entries) by_col[e.col].push_back({e.row, e.value});
        for (const auto& e : m1.entries)
            for (const auto& [r2, v2] : by_col[e.row]) product[{r2, e.col}] += e.value * v2;
        for (const auto& [pos, v] : product)
            if (v != 0)
                throw InternalError("dd != 0 at grading (" + std::to_string(ij.first) + "," +
                                    std::to_string(ij.second) + ")");
    }
}

HomologyTable homology(const ChainComplex& cx, Torsion torsion) {
    return homology_impl(cx, torsion, true);
}
HomologyTable homology_serial(const ChainComplex& cx, Torsion torsion) {
    return homology_impl(cx, torsion, false);
}

std::string HomologyTable::to_json(bool shifted_labels, int n_plus, int n_minus) const {
    json arr = json::array();
    for (const auto& r : rows) {
        json row;
        row["i"] = shifted_labels ? r.i - n_minus : r.i;
        row["j"] = shifted_labels ? r.j + n_plus - 2 * n_minus : r.j;
        row["betti"] = r.betti;
        if (r.torsion) row["torsion"] = *r.torsion;
        arr.push_back(row);
    }
    return arr.dump();
}

Laurent graded_euler_dims(const ChainComplex& cx) {
    Laurent out(Var::Q);
    for (const auto& [ij, bucket] : cx.buckets) {
        long n = static_cast<long>(bucket.size());
        out += Laurent::monomial(Var::Q, ij.second, (ij.first % 2 == 0) ? n : -n);
    }
    return out;
}

Laurent graded_euler_betti(const HomologyTable& table) {
    Laurent out(Var::Q);
    for (const auto& r : table.rows)
        out += Laurent::monomial(Var::Q, r.j, (r.i % 2 == 0) ? r.betti : -r.betti);
    return out;
}

void require_unit_modulus(std::complex<double> q) {
    if (std::abs(std::abs(q) - 1.0) > 1e-12)
        throw ValidationError("q must lie on the unit circle (|q| = 1 within 1e-12)");
}

std::complex<double> u_eigenvalue(const EnhancedState& s, std::complex<double> q) {
    std::complex<double> p(1.0, 0.0);
    std::complex<double> base = s.j >= 0 ? q : 1.0 / q;
    int n = s.j >= 0 ? s.j : -s.j;
    for (int t = 0; t < n; ++t) p *= base;
    return (s.i % 2 == 0) ? p : -p;
}

BasisKet enhanced_ket(const EnhancedState& s) {
    std::string payload(18, '\0');
    for (int b = 0; b < 4; ++b) {
        payload[b] = static_cast<char>(s.smoothing >> (8 * b) & 0xff);
        payload[4 + b] = static_cast<char>(s.labels >> (8 * b) & 0xff);
        payload[8 + b] = static_cast<char>(static_cast<std::uint32_t>(s.i) >> (8 * b) & 0xff);
        payload[12 + b] = static_cast<char>(static_cast<std::uint32_t>(s.j) >> (8 * b) & 0xff);
    }
    payload[16] = static_cast<char>(s.loop_count);
    payload[17] = 0;
    return BasisKet{Family::EnhancedState, payload};
}

EnhancedState enhanced_from_ket(const BasisKet& k) {
    if (k.family != Family::EnhancedState || k.payload.size() != 18)
        throw ValidationError("not an enhanced-state ket");
    auto read32 = [&](int off) {
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(k.payload[off + b]))
                 << (8 * b);
        return v;
    };
    EnhancedState s;
    s.smoothing = read32(0);
    s.labels = read32(4);
    s.i = static_cast<int>(read32(8));
    s.j = static_cast<int>(read32(12));
    s.loop_count = static_cast<unsigned char>(k.payload[16]);
    return s;
}

DiagonalUnitary unitary_u(const PlanarDiagram& d, std::complex<double> q) {
    require_unit_modulus(q);
    (void)d;
    return DiagonalUnitary(Family::EnhancedState, [q](const BasisKet& k) {
        return u_eigenvalue(enhanced_from_ket(k), q);
    });
}

std::complex<double> amplitude(const PlanarDiagram& d, std::complex<double> q) {
    require_unit_modulus(q);
    std::complex<double> acc(0.0, 0.0);
    for_each_enhanced_state(d, [&](const EnhancedState& s) { acc += u_eigenvalue(s, q); });
    return acc;
}

std::complex<double> density_trace(const PlanarDiagram& d, std::complex<double> q) {
    require_unit_modulus(q);
    // rho = |psi><psi| has diagonal psi_s conj(psi_s); Tr(U rho) needs only the
    // diagonals since U is diagonal in the enhanced-state basis
    std::complex<double> acc(0.0, 0.0);
    for_each_enhanced_state(d, [&](const EnhancedState& s) {
        const std::complex<double> psi_s(1.0, 0.0);
        acc += u_eigenvalue(s, q) * psi_s * std::conj(psi_s);
    });
    return acc;
}

CheckReport check_anticommutation(const ChainComplex& cx, std::complex<double> q) {
    require_unit_modulus(q);
    CheckReport rep;
    for (const auto& [ij, m] : cx.boundary) {
        const auto& src = cx.buckets.at(ij);
        auto tgt_it = cx.buckets.find({ij.first + 1, ij.second});
        for (const auto& e : m.entries) {
            const EnhancedState& s = src[e.col];
            const EnhancedState& s2 = tgt_it->second[e.row];
            // symbolic: lambda_s' + lambda_s = ((-1)^(i+1) + (-1)^i) q^j when j
            // is preserved; any j mismatch is a hard failure
            if (s2.j != s.j || s2.i != s.i + 1) {
                rep.pass = false;
                rep.violations++;
            }
            const double dev = std::abs(static_cast<double>(e.value) *
                                        (u_eigenvalue(s2, q) + u_eigenvalue(s, q)));
            rep.max_deviation = std::max(rep.max_deviation, dev);
        }
    }
    if (rep.max_deviation > 1e-9) rep.pass = false;
    rep.detail = "U d + d U over all basis states";
    return rep;
}

CheckReport check_eigenvalue_propagation(const ChainComplex& cx) {
    CheckReport rep;
    for (const auto& [ij, m] : cx.boundary) {
        const auto& src = cx.buckets.at(ij);
        auto tgt_it = cx.buckets.find({ij.first + 1, ij.second});
        for (const auto& e : m.entries) {
            if (e.value == 0) continue;
            const EnhancedState& s = src[e.col];
            const EnhancedState& s2 = tgt_it->second[e.row];
            // lambda = (-1)^i q^j: lambda' = -lambda iff j' == j and i' = i+1
            if (!(s2.j == s.j && (s2.i - s.i) % 2 != 0)) {
                rep.pass = false;
                rep.violations++;
            }
        }
    }
    rep.detail = "lambda_s' = -lambda_s on every nonzero boundary entry";
    return rep;
}

EigenspaceAmplitude eigenspace_amplitude(const PlanarDiagram& d, std::complex<double> q) {
    require_unit_modulus(q);
    ChainComplex cx = build_complex(d);
    HomologyTable table = homology(cx);
    std::map<int, long> chi;  // j -> alternating betti sum
    for (const auto& r : table.rows) chi[r.j] += (r.i % 2 == 0) ? r.betti : -r.betti;
    std::vector<int> js;
    for (const auto& [ij, bucket] : cx.buckets) js.push_back(ij.second);
    std::sort(js.begin(), js.end());
    js.erase(std::unique(js.begin(), js.end()), js.end());
    EigenspaceAmplitude out;
    for (size_t x = 0; x < js.size(); ++x)
        for (size_t y = x + 1; y < js.size(); ++y) {
            std::complex<double> qa = std::pow(q, js[x]), qb = std::pow(q, js[y]);
            if (std::abs(qa - qb) < 1e-9) out.collapsed_j_warning = true;
        }
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [j, x] : chi) {
        std::complex<double> p(1.0, 0.0);
        std::complex<double> base = j >= 0 ? q : 1.0 / q;
        for (int t = 0; t < std::abs(j); ++t) p *= base;
        acc += p * static_cast<double>(x);
    }
    out.value = acc;
    return out;
}

}  // namespace qknot
