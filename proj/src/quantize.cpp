#include "qknot/quantize.hpp"

namespace qknot {

std::string family_name(Family f) {
    switch (f) {
        case Family::Mosaic: return "mosaic";
        case Family::Gauss: return "gauss";
        case Family::Graph: return "graph";
        case Family::Word: return "word";
        case Family::EnhancedState: return "enhanced-state";
    }
    throw InternalError("unknown family");
}

}  // namespace qknot
