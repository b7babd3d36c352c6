#include "kepmpc/kep/quote.hpp"

#include <fstream>
#include <sstream>

namespace kepmpc {

namespace {

std::vector<std::uint8_t> parse_bits(const std::string& s, std::size_t line) {
  std::vector<std::uint8_t> out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw QuoteFormatError("line " + std::to_string(line) + ": '" + s + "' is not a 0/1 string");
    }
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string bit_string(const std::vector<std::uint8_t>& v) {
  std::string s;
  for (auto b : v) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::vector<std::uint8_t> json_bits(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw QuoteFormatError(std::string("missing array '") + key + "'");
  std::vector<std::uint8_t> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) throw QuoteFormatError(std::string("non-integer entry in '") + key + "'");
    const int b = v.get<int>();
    if (b != 0 && b != 1) throw QuoteFormatError(std::string("non-binary entry in '") + key + "'");
    out.push_back(static_cast<std::uint8_t>(b));
  }
  return out;
}

}  // namespace

std::string_view to_string(Bloodtype b) {
  switch (b) {
    case Bloodtype::kO: return "O";
    case Bloodtype::kA: return "A";
    case Bloodtype::kB: return "B";
    case Bloodtype::kAB: return "AB";
  }
  return "?";
}

void MedicalQuote::validate() const {
  auto binary = [](const std::vector<std::uint8_t>& v) {
    for (auto b : v) {
      if (b > 1) return false;
    }
    return true;
  };
  if (donor_bloodtype.size() != kBloodtypes || patient_accepts.size() != kBloodtypes) {
    throw QuoteFormatError("bloodtype vectors need 4 entries");
  }
  if (donor_antigens.size() != patient_antibodies.size()) {
    throw QuoteFormatError("antigen and antibody vectors differ in length");
  }
  if (!binary(donor_bloodtype) || !binary(donor_antigens) || !binary(patient_accepts) || !binary(patient_antibodies)) {
    throw QuoteFormatError("quote entries must be 0 or 1");
  }
  int ones = 0;
  for (auto b : donor_bloodtype) ones += b;
  if (ones != 1) throw QuoteFormatError("donor bloodtype must be one-hot");
}

std::vector<std::int64_t> MedicalQuote::flatten() const {
  std::vector<std::int64_t> out;
  for (const auto* v : {&donor_bloodtype, &donor_antigens, &patient_accepts, &patient_antibodies}) {
    out.insert(out.end(), v->begin(), v->end());
  }
  return out;
}

std::vector<std::uint8_t> acceptable_donors(Bloodtype patient) {
  switch (patient) {
    case Bloodtype::kO: return {1, 0, 0, 0};
    case Bloodtype::kA: return {1, 1, 0, 0};
    case Bloodtype::kB: return {1, 0, 1, 0};
    case Bloodtype::kAB: return {1, 1, 1, 1};
  }
  return {0, 0, 0, 0};
}

bool compatible(const MedicalQuote& from, const MedicalQuote& to) {
  bool abo = false;
  for (std::size_t k = 0; k < kBloodtypes; ++k) abo = abo || (from.donor_bloodtype[k] && to.patient_accepts[k]);
  if (!abo) return false;
  for (std::size_t k = 0; k < from.donor_antigens.size(); ++k) {
    if (from.donor_antigens[k] && to.patient_antibodies[k]) return false;
  }
  return true;
}

Digraph compatibility_graph(const std::vector<MedicalQuote>& quotes) {
  const int n = static_cast<int>(quotes.size());
  Digraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && compatible(quotes[u], quotes[v])) g.set(u, v);
    }
  }
  return g;
}

std::vector<MedicalQuote> parse_quotes_text(std::istream& in) {
  std::vector<MedicalQuote> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> fields;
    for (std::string f; ls >> f;) fields.push_back(f);
    if (fields.empty()) continue;
    if (fields.size() != 4) throw QuoteFormatError("line " + std::to_string(number) + ": expected 4 fields");
    MedicalQuote q{parse_bits(fields[0], number), parse_bits(fields[1], number), parse_bits(fields[2], number),
                   parse_bits(fields[3], number)};
    try {
      q.validate();
    } catch (const QuoteFormatError& e) {
      throw QuoteFormatError("line " + std::to_string(number) + ": " + e.what());
    }
    out.push_back(std::move(q));
  }
  for (const auto& q : out) {
    if (q.hla_length() != out.front().hla_length()) throw QuoteFormatError("pairs use different HLA lengths");
  }
  return out;
}

std::vector<MedicalQuote> quotes_from_json(const nlohmann::json& j) {
  if (!j.contains("pairs") || !j.at("pairs").is_array()) throw QuoteFormatError("missing 'pairs' array");
  std::vector<MedicalQuote> out;
  for (const auto& p : j.at("pairs")) {
    MedicalQuote q{json_bits(p, "donor_bloodtype"), json_bits(p, "donor_antigens"), json_bits(p, "patient_accepts"),
                   json_bits(p, "patient_antibodies")};
    q.validate();
    if (!out.empty() && q.hla_length() != out.front().hla_length()) {
      throw QuoteFormatError("pairs use different HLA lengths");
    }
    out.push_back(std::move(q));
  }
  return out;
}

nlohmann::json to_json(const std::vector<MedicalQuote>& quotes) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& q : quotes) {
    pairs.push_back({{"donor_bloodtype", q.donor_bloodtype},
                     {"donor_antigens", q.donor_antigens},
                     {"patient_accepts", q.patient_accepts},
                     {"patient_antibodies", q.patient_antibodies}});
  }
  return {{"pairs", pairs}};
}

std::string to_text(const std::vector<MedicalQuote>& quotes) {
  std::string out = "# donor_bloodtype(O,A,B,AB) donor_antigens patient_accepts patient_antibodies\n";
  for (const auto& q : quotes) {
    out += bit_string(q.donor_bloodtype) + ' ' + bit_string(q.donor_antigens) + ' ' + bit_string(q.patient_accepts) +
           ' ' + bit_string(q.patient_antibodies) + '\n';
  }
  return out;
}

std::vector<MedicalQuote> read_quotes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw QuoteFormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return quotes_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw QuoteFormatError(path + ": " + e.what());
    }
  }
  std::istringstream ts(text);
  return parse_quotes_text(ts);
}

}  // namespace kepmpc
