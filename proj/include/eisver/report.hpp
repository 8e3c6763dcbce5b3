#pragma once

// Verdict reports: JSON (keys sorted, canonical), CSV projection and plain text.

#include "eisver/torsion.hpp"

#include "json.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace eisver {

inline constexpr const char* report_version = "1";

inline nlohmann::json integer_json(const Integer& x)
{
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

inline nlohmann::json to_json(const Verdict& v)
{
  nlohmann::json j;
  j["p"] = v.p;
  j["q"] = v.q;
  j["ell"] = v.ell;
  j["claim"] = v.claim;
  j["status"] = to_string(v.status);
  j["cusp_structure"] = v.cusp_structure;
  j["upper_bound"] = v.upper_bound ? integer_json(*v.upper_bound) : nlohmann::json(nullptr);
  j["witnesses"] = nlohmann::json::object();
  for (const auto& [k, w] : v.witnesses) j["witnesses"][k] = w;
  return j;
}

inline std::string json_report(const nlohmann::json& parameters, const std::vector<Verdict>& verdicts)
{
  nlohmann::json j;
  j["version"] = report_version;
  j["parameters"] = parameters;
  j["verdicts"] = nlohmann::json::array();
  for (const auto& v : verdicts) j["verdicts"].push_back(to_json(v));
  return j.dump(2) + "\n";
}

inline std::string csv_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_report(const std::vector<Verdict>& verdicts)
{
  std::ostringstream out;
  out << "p,q,ell,claim,status,cusp_structure,upper_bound,witnesses\n";
  for (const auto& v : verdicts) {
    std::string w;
    for (const auto& [k, x] : v.witnesses) w += (w.empty() ? "" : ";") + k + "=" + x;
    out << v.p << ',' << v.q << ',' << v.ell << ',' << csv_field(v.claim) << ',' << to_string(v.status) << ','
        << csv_field(v.cusp_structure) << ',' << (v.upper_bound ? v.upper_bound->get_str() : "") << ','
        << csv_field(w) << '\n';
  }
  return out.str();
}

inline std::string text_report(const std::vector<Verdict>& verdicts)
{
  std::ostringstream out;
  for (const auto& v : verdicts) {
    out << "(" << v.p << ", " << v.q << ", " << v.ell << ") " << v.claim << ": " << to_string(v.status)
        << "  C=" << v.cusp_structure;
    if (v.upper_bound) out << "  bound=" << v.upper_bound->get_str();
    out << '\n';
    for (const auto& [k, x] : v.witnesses) {
      if (x.find('\n') != std::string::npos) {
        out << "    " << k << ":\n";
        std::istringstream lines(x);
        for (std::string line; std::getline(lines, line);) out << "      " << line << '\n';
      } else {
        out << "    " << k << " = " << x << '\n';
      }
    }
  }
  return out.str();
}

inline std::string render_report(const std::string& format, const nlohmann::json& parameters,
                                 const std::vector<Verdict>& verdicts)
{
  if (format == "json") return json_report(parameters, verdicts);
  if (format == "csv") return csv_report(verdicts);
  if (format == "text") return text_report(verdicts);
  throw std::invalid_argument("unknown report format: " + format);
}

} // namespace eisver
