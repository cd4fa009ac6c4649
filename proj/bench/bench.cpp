// Compares the OpenMP state-sum kernels against the serial reference folds on
// torus-braid closures of growing size, and the parallel vs serial complex
// build. Results must agree exactly; timings are informative.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qknot/bracket.hpp"
#include "qknot/khovanov.hpp"
#include "qknot/pd.hpp"

using namespace qknot;
using Clock = std::chrono::steady_clock;

namespace {

// T(2,n): closure of the positive 2-braid sigma^n
PlanarDiagram torus2(int n) { return braid_closure(2, std::vector<int>(n, 1)); }

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("%-18s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "equal");

    for (int n : {12, 14, 16, 18}) {
        const PlanarDiagram d = torus2(n);
        auto t0 = Clock::now();
        const Laurent s = bracket_q_serial(d);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        const Laurent p = bracket_q(d);
        const double tp = ms_since(t0);
        std::printf("bracket_q T(2,%-2d) %12.1f %12.1f %8s\n", n, ts, tp,
                    s == p ? "yes" : "NO");
    }
    for (int n : {8, 10}) {
        const PlanarDiagram d = torus2(n);
        auto t0 = Clock::now();
        ChainComplex cs = build_complex_serial(d);
        HomologyTable hs = homology_serial(cs);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        ChainComplex cp = build_complex(d);
        HomologyTable hp = homology(cp);
        const double tp = ms_since(t0);
        bool equal = hs.rows.size() == hp.rows.size();
        for (size_t k = 0; equal && k < hs.rows.size(); ++k)
            equal = hs.rows[k].i == hp.rows[k].i && hs.rows[k].j == hp.rows[k].j &&
                    hs.rows[k].betti == hp.rows[k].betti;
        std::printf("khovanov  T(2,%-2d) %12.1f %12.1f %8s\n", n, ts, tp,
                    equal ? "yes" : "NO");
    }
    return 0;
}
