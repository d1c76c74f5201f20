#pragma once

namespace ramsey {

// Every parallel kernel keeps a serial twin. Serial is the reference the
// tests trust; Parallel must match it bit-for-bit (per-slot writes, integer
// reductions, sorted merges -- no floating-point accumulation order games).
enum class ExecPolicy { Serial, Parallel };

} // namespace ramsey
