#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qknot/bracket.hpp"
#include "qknot/laurent.hpp"
#include "qknot/pd.hpp"
#include "qknot/quantize.hpp"

namespace qknot {

using Bigrading = std::pair<int, int>;  // (i, j)

// entries of the degree-(+1,0) boundary matrix C^{i,j} -> C^{i+1,j}
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    struct Entry {
        int row, col, value;
    };
    std::vector<Entry> entries;
};

struct ChainComplex {
    PlanarDiagram diagram;
    std::map<Bigrading, std::vector<EnhancedState>> buckets;
    std::map<Bigrading, SparseIntMatrix> boundary;  // keyed by source grading

    int dim(Bigrading ij) const {
        auto it = buckets.find(ij);
        return it == buckets.end() ? 0 : static_cast<int>(it->second.size());
    }
};

int homology_cap();     // QKNOT_HOMOLOGY_CAP, default 14 crossings
int torsion_dim_cap();  // QKNOT_TORSION_CAP, default 512

// Frobenius rules on the +/-1 (1/X) loop labels: merges multiply
// (m(1,1)=1, m(1,X)=m(X,1)=X, m(X,X)=0), splits comultiply
// (Delta(1)=1xX+Xx1, Delta(X)=XxX); entry sign is (-1)^(#earlier B-smoothings).
ChainComplex build_complex(const PlanarDiagram& d);
ChainComplex build_complex_serial(const PlanarDiagram& d);  // reference

// verify dd == 0 by exact integer matrix products; throws InternalError if not
void assert_dd_zero(const ChainComplex& cx);

struct HomologyRow {
    int i, j;
    int betti;
    std::optional<std::vector<long>> torsion;  // invariant factors > 1; nullopt = skipped
};

struct HomologyTable {
    std::vector<HomologyRow> rows;  // sorted by (j, i); zero rows omitted
    std::string to_json(bool shifted_labels = false, int n_plus = 0, int n_minus = 0) const;
};

enum class Torsion { None, Capped };

HomologyTable homology(const ChainComplex& cx, Torsion torsion = Torsion::None);
HomologyTable homology_serial(const ChainComplex& cx, Torsion torsion = Torsion::None);

Laurent graded_euler_dims(const ChainComplex& cx);
Laurent graded_euler_betti(const HomologyTable& table);

// U|s> = (-1)^i(s) q^j(s) |s>; |q| must be 1 within 1e-12
std::complex<double> u_eigenvalue(const EnhancedState& s, std::complex<double> q);
void require_unit_modulus(std::complex<double> q);

BasisKet enhanced_ket(const EnhancedState& s);
EnhancedState enhanced_from_ket(const BasisKet& k);
// the diagonal unitary on enhanced-state kets of this diagram
DiagonalUnitary unitary_u(const PlanarDiagram& d, std::complex<double> q);

// <psi|U|psi> with |psi> the unnormalized all-ones state over enhanced kets
std::complex<double> amplitude(const PlanarDiagram& d, std::complex<double> q);
// Tr(U rho) with rho = |psi><psi|, evaluated without materializing rho
std::complex<double> density_trace(const PlanarDiagram& d, std::complex<double> q);

struct CheckReport {
    bool pass = true;
    double max_deviation = 0.0;
    long violations = 0;
    std::string detail;
};

// U d + d U = 0: exact in symbolic form, and numerically at the given q
CheckReport check_anticommutation(const ChainComplex& cx, std::complex<double> q);
// every nonzero matrix entry connects eigenvalues lambda' = -lambda exactly
CheckReport check_eigenvalue_propagation(const ChainComplex& cx);

struct EigenspaceAmplitude {
    std::complex<double> value;
    bool collapsed_j_warning = false;  // q identifies distinct occurring j values
};

// sum_j q^j chi(H(C^{.,j})) over the j-graded subcomplexes
EigenspaceAmplitude eigenspace_amplitude(const PlanarDiagram& d, std::complex<double> q);

}  // namespace qknot
