#pragma once

namespace sqconf {

// Worker count from CONF_THREADS, else the hardware concurrency (at least 1).
int thread_count();

}  // namespace sqconf
