#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "vstate/interval.hpp"

namespace vstate {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

// Machine-readable outcome of one verification run. A pass verdict always
// means the computed enclosure satisfies the target as a strict interval
// inequality; inconclusive means the enclosure straddles the bound, so the
// run neither proves nor refutes it at the chosen resolution.
struct VerificationReport {
  std::string lemma;     // stable identifier of the claim being checked
  std::string target;    // the inequality, human-readable
  Interval enclosure{};  // enclosure the verdict is based on (worst cell)
  Verdict verdict = Verdict::inconclusive;
  double margin = 0;  // headroom between enclosure and bound; > 0 on pass
  std::vector<std::pair<std::string, std::string>> params;
  double wall_seconds = 0;
  std::string chunk_note;  // provenance when aggregated from chunked runs
  std::string note;        // e.g. achieved widths for inconclusive verdicts
};

std::string to_text(const VerificationReport& r);
std::string to_tsv(const VerificationReport& r);

// Wall-clock stopwatch for report timing.
class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    const auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace vstate
