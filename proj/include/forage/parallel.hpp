#pragma once

namespace forage {

/// Caps OpenMP worker threads to the FORAGE_THREADS environment variable when
/// it is set to a positive integer. No-op otherwise or without OpenMP.
void apply_thread_cap();

}  // namespace forage
