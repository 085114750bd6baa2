#pragma once

namespace hdtest {

/// Worker count for replication loops: `requested` if positive, otherwise the
/// OpenMP default capped by the HDTEST_THREADS environment variable.
int resolve_threads(int requested = 0);

}  // namespace hdtest
