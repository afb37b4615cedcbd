#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wslab {

using complexd = std::complex<double>;

// Error taxonomy shared by the whole library.  Each class corresponds to a
// distinct failure mode surfaced to callers and, via the CLI, to exit codes.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-fatal diagnostics (aliasing tails, leaked mass, ...) are collected here
// instead of being printed; the CLI decides whether they are fatal (--strict).
class WarningSink {
  public:
    void emit(std::string tag, std::string message, double value = 0.0) {
        entries_.push_back({std::move(tag), std::move(message), value});
    }
    struct Entry {
        std::string tag;
        std::string message;
        double value;
    };
    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    void clear() { entries_.clear(); }

  private:
    std::vector<Entry> entries_;
};

WarningSink& global_warnings();

// Deterministic parallel loop: the index space is split into contiguous
// chunks, each element is produced independently, so results do not depend on
// the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Worker count used by parallel_for; 0 or 1 runs serial.
void set_worker_count(unsigned n);
unsigned worker_count();

// FNV-1a over raw bytes; used for trajectory integrity and config hashes.
std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed = 1469598103934665603ull);

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace wslab
