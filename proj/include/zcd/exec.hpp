#pragma once

namespace zcd {

/// Execution policy for the data-parallel kernels. Serial is the reference
/// path; Parallel (OpenMP) must reproduce it bit for bit.
enum class Exec { Serial, Parallel };

}  // namespace zcd
