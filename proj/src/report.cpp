#include "vstate/report.hpp"

#include <sstream>

namespace vstate {

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.lemma << ": " << to_string(r.verdict) << "\n";
  os << "  target    " << r.target << "\n";
  os << "  enclosure " << to_string(r.enclosure) << "\n";
  os << "  margin    " << endpoint_to_string(r.margin) << "\n";
  for (const auto& [k, v] : r.params) os << "  " << k << " = " << v << "\n";
  if (!r.note.empty()) os << "  note      " << r.note << "\n";
  if (!r.chunk_note.empty()) os << "  chunks    " << r.chunk_note << "\n";
  os << "  wall      " << r.wall_seconds << " s\n";
  return os.str();
}

std::string to_tsv(const VerificationReport& r) {
  std::ostringstream os;
  os << "lemma\t" << r.lemma << "\n";
  os << "target\t" << r.target << "\n";
  os << "verdict\t" << to_string(r.verdict) << "\n";
  os << "enclosure\t" << to_string(r.enclosure) << "\n";
  os << "margin\t" << endpoint_to_string(r.margin) << "\n";
  for (const auto& [k, v] : r.params) os << "param." << k << "\t" << v << "\n";
  if (!r.note.empty()) os << "note\t" << r.note << "\n";
  if (!r.chunk_note.empty()) os << "chunks\t" << r.chunk_note << "\n";
  os << "wall_seconds\t" << r.wall_seconds << "\n";
  return os.str();
}

}  // namespace vstate
