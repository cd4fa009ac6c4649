#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qknot/laurent.hpp"
#include "qknot/pd.hpp"

namespace qknot {

// Loop structure of one smoothing. Loops over the diagram's arcs come first,
// ordered by their smallest arc label; crossing-free circles occupy the
// trailing indices.
struct LoopStructure {
    int loop_count = 0;
    std::vector<int> loop_of_arc;  // 1-based arc -> loop index
};

// Smoothing bit k set means the B-smoothing at crossing k (joins a-d, b-c);
// clear means A (joins a-b, c-d).
LoopStructure loops_of(const PlanarDiagram& d, std::uint32_t smoothing);

// A state plus a +/-1 label per loop. Label bit t set means loop t carries -1
// (the X generator); clear means +1. Gradings: i = #B-smoothings,
// j = i + (#loops labeled +1) - (#loops labeled -1).
struct EnhancedState {
    std::uint32_t smoothing = 0;
    std::uint32_t labels = 0;
    int loop_count = 0;
    int i = 0;
    int j = 0;
};

// Number of crossings the state-sum operations accept before refusing;
// overridable with QKNOT_CROSSING_CAP.
int crossing_cap();

std::uint64_t enhanced_state_count(const PlanarDiagram& d);

// Enumeration order is fixed for reproducibility: smoothings count up in
// binary (bit k = crossing k), then labels count up in binary (bit t = loop t).
void for_each_enhanced_state(const PlanarDiagram& d,
                             const std::function<void(const EnhancedState&)>& fn);
std::vector<EnhancedState> enhanced_states(const PlanarDiagram& d);

Laurent delta_a();  // -A^2 - A^-2, the loop value <O>
Laurent delta_q();  // q + q^-1

// <K> = sum_S A^(#A - #B) delta^||S||   (so <unknot> = delta itself)
Laurent bracket_a(const PlanarDiagram& d);
// <K> = sum_s (-1)^i(s) q^j(s) over enhanced states
Laurent bracket_q(const PlanarDiagram& d);

// Serial reference folds, kept for testing the partitioned kernels against;
// results are bit-identical.
Laurent bracket_a_serial(const PlanarDiagram& d);
Laurent bracket_q_serial(const PlanarDiagram& d);

// f_K(A) = (-A^3)^(-wr) <K> / <O>
Laurent f_polynomial(const PlanarDiagram& d);

// V_K(t) = f_K(t^(-1/4)); whole-t exponents when divisible, else tQuarter
Laurent jones(const PlanarDiagram& d);

}  // namespace qknot
