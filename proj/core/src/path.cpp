#include "itolab/path.hpp"

namespace itolab {

std::string_view to_string(PathTag tag) {
  switch (tag) {
    case PathTag::kUnspecified:
      return "unspecified";
    case PathTag::kMartingale:
      return "martingale";
    case PathTag::kBoundedVariation:
      return "bounded-variation";
    case PathTag::kSemimartingale:
      return "semimartingale";
  }
  return "unspecified";
}

}  // namespace itolab
