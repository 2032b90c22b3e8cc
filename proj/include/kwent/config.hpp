#pragma once

namespace kwent {

inline constexpr int kDefaultMaxDimension = 26;

// Environment variable that overrides the dense-vector dimension cap.
inline constexpr const char* kMaxDimensionEnv = "KWENT_MAX_DIM";

// Largest n for which dense functions on {0,1}^n may be allocated.
// Reads KWENT_MAX_DIM on every call; falls back to the default when the
// variable is unset or not a positive integer no larger than 40.
int max_dimension();

// Throws SizeError unless 1 <= n <= max_dimension().
void require_dimension(int n);

}  // namespace kwent
