#pragma once

namespace sigstab {

/// Selects between the serial reference path and the OpenMP kernel. Both
/// produce bit-identical results; the serial path is kept for testing.
enum class Exec { serial, parallel };

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
int max_threads() noexcept;

}  // namespace sigstab
