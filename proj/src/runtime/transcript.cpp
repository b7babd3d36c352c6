#include "kepmpc/runtime/transcript.hpp"

namespace kepmpc {

std::string_view to_string(OpenLabel label) {
  switch (label) {
    case OpenLabel::kPruneBit:
      return "prune-bit";
    case OpenLabel::kSimplexTermination:
      return "simplex-termination-bit";
    case OpenLabel::kFinalOutput:
      return "final-output";
    case OpenLabel::kTestOnly:
      return "test-only";
  }
  return "?";
}

std::optional<OpenLabel> parse_label(std::string_view s) {
  for (auto l : {OpenLabel::kPruneBit, OpenLabel::kSimplexTermination, OpenLabel::kFinalOutput,
                 OpenLabel::kTestOnly}) {
    if (to_string(l) == s) return l;
  }
  return std::nullopt;
}

std::size_t Transcript::count(OpenLabel label) const {
  std::size_t n = 0;
  for (const auto& e : events_) n += e.label == label ? 1 : 0;
  return n;
}

std::vector<BigInt> Transcript::values(OpenLabel label) const {
  std::vector<BigInt> out;
  for (const auto& e : events_) {
    if (e.label == label) out.insert(out.end(), e.values.begin(), e.values.end());
  }
  return out;
}

nlohmann::json to_json(const OpeningEvent& e) {
  nlohmann::json j;
  j["label"] = std::string(to_string(e.label));
  auto vals = nlohmann::json::array();
  for (const auto& v : e.values) vals.push_back(v.str());
  j["values"] = std::move(vals);
  if (e.released != 0) j["released"] = e.released;
  return j;
}

nlohmann::json to_json(const Transcript& t) {
  auto arr = nlohmann::json::array();
  for (const auto& e : t.events()) arr.push_back(to_json(e));
  return arr;
}

nlohmann::json to_json(const TrafficStats& s) {
  return {{"bytes_sent", s.bytes_sent},
          {"messages_sent", s.messages_sent},
          {"rounds", s.rounds},
          {"multiplications", s.multiplications},
          {"masked_reveals", s.masked_reveals},
          {"compute_seconds", s.compute_seconds},
          {"simulated_seconds", s.simulated_seconds}};
}

std::string serialize(const Transcript& t) { return to_json(t).dump(); }

}  // namespace kepmpc
