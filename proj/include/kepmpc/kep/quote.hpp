// Medical data of one patient-donor pair and its file formats.
//
// Text format, one pair per line, blank lines and '#' comments ignored:
//   <donor bloodtype> <donor antigens> <patient accepts> <patient antibodies>
// each a string of 0/1 characters. Bloodtype vectors have 4 entries in the
// order O, A, B, AB; the antigen and antibody vectors share one length.
//
// JSON format: {"pairs": [{"donor_bloodtype": [..], "donor_antigens": [..],
// "patient_accepts": [..], "patient_antibodies": [..]}, ...]}.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "kepmpc/plain/kep_oracle.hpp"

namespace kepmpc {

inline constexpr std::size_t kBloodtypes = 4;
inline constexpr std::size_t kDefaultHlaLength = 16;

enum class Bloodtype : std::uint8_t { kO = 0, kA = 1, kB = 2, kAB = 3 };

std::string_view to_string(Bloodtype b);

class QuoteFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MedicalQuote {
  std::vector<std::uint8_t> donor_bloodtype;     // B^d, one-hot
  std::vector<std::uint8_t> donor_antigens;      // A^d
  std::vector<std::uint8_t> patient_accepts;     // B^p
  std::vector<std::uint8_t> patient_antibodies;  // A^p

  std::size_t hla_length() const { return donor_antigens.size(); }
  // Throws QuoteFormatError on non-binary entries, wrong lengths or a donor
  // bloodtype that is not one-hot.
  void validate() const;
  // B^d, A^d, B^p, A^p concatenated; the order in which quotes are dealt.
  std::vector<std::int64_t> flatten() const;

  bool operator==(const MedicalQuote&) const = default;
};

// Blood groups a patient of type `patient` can receive from.
std::vector<std::uint8_t> acceptable_donors(Bloodtype patient);

// Donor of `from` can give to the patient of `to`: a shared bloodtype and no
// antigen hitting an antibody.
bool compatible(const MedicalQuote& from, const MedicalQuote& to);
Digraph compatibility_graph(const std::vector<MedicalQuote>& quotes);

std::vector<MedicalQuote> parse_quotes_text(std::istream& in);
std::vector<MedicalQuote> quotes_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<MedicalQuote>& quotes);
std::string to_text(const std::vector<MedicalQuote>& quotes);
// Picks the format from the first non-blank character ('{' means JSON).
std::vector<MedicalQuote> read_quotes(const std::string& path);

}  // namespace kepmpc
