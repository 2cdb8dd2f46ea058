#pragma once

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <string>

namespace modelforge {

// Error in the user-supplied input (syntax, arity conflicts, bad constraints).
struct InputError : std::runtime_error {
  int line;
  int column;
  explicit InputError(const std::string& msg, int line = -1, int column = -1)
      : std::runtime_error(msg), line(line), column(column) {}
};

// Thrown when a resource limit trips; callers translate these to outcomes.
struct TimeLimitReached {};
struct MemoryLimitReached {};
struct Interrupted {};

// Central byte counter for the -k limit.  Charges are approximate: each
// component charges what it allocates for clause storage and bookkeeping.
class MemoryMeter {
 public:
  MemoryMeter() = default;
  explicit MemoryMeter(long long limit_kbytes)
      : limit_bytes_(limit_kbytes < 0 ? -1 : limit_kbytes * 1024) {}

  void charge(long long bytes) {
    used_ += bytes;
    if (limit_bytes_ >= 0 && used_ > limit_bytes_) throw MemoryLimitReached{};
  }
  void release(long long bytes) { used_ -= bytes; }
  void reset() { used_ = 0; }
  long long used() const { return used_; }

 private:
  long long used_ = 0;
  long long limit_bytes_ = -1;
};

// Absolute wall-clock deadline for the -t limit.
struct Deadline {
  std::chrono::steady_clock::time_point at{};
  bool enabled = false;

  static Deadline after_seconds(double s) {
    Deadline d;
    if (s >= 0) {
      d.enabled = true;
      d.at = std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(s));
    }
    return d;
  }
  bool expired() const {
    return enabled && std::chrono::steady_clock::now() >= at;
  }
  void check() const {
    if (expired()) throw TimeLimitReached{};
  }
};

}  // namespace modelforge
