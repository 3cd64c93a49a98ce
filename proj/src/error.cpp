#include "ave/error.hpp"

namespace ave {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroRhs: return "ZeroRhs";
    case ErrorKind::DegenerateBlock: return "DegenerateBlock";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace ave
