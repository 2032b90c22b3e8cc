#include "kwent/config.hpp"

#include <cstdlib>
#include <string>

#include "kwent/errors.hpp"

namespace kwent {

int max_dimension() {
    const char* raw = std::getenv(kMaxDimensionEnv);
    if (raw == nullptr || *raw == '\0') return kDefaultMaxDimension;
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 1 || v > 40) return kDefaultMaxDimension;
    return static_cast<int>(v);
}

void require_dimension(int n) {
    const int cap = max_dimension();
    if (n < 1 || n > cap) {
        throw SizeError("dimension n=" + std::to_string(n) + " outside supported range [1, " +
                        std::to_string(cap) + "]");
    }
}

}  // namespace kwent
