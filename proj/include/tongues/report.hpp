#pragma once

#include "tongues/pinch.hpp"
#include "tongues/pl_map.hpp"
#include "tongues/tongue_scan.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tongues {

/// Header plus one line per record. Rationals as "a/b"; float columns follow
/// for plotting; the last column is "ok" or "unresolved".
std::string write_csv(const std::vector<TongueRecord>& records);
/// Inverse of write_csv; float columns are ignored. Throws ParseError.
std::vector<TongueRecord> parse_csv(const std::string& text);

struct PinchMarker {
    double omega = 0.0;
    double b = 0.0;
};

/// Tongue diagram: omega in [0, 1] across, b in [0, 1] up. Byte-identical for
/// identical input.
std::string render_svg(const std::vector<TongueRecord>& records, const std::vector<PinchMarker>& pinches = {});

nlohmann::ordered_json to_json(const PLMap& map);
nlohmann::ordered_json to_json(const StepDensity& density);
nlohmann::ordered_json to_json(const Configuration& c);
nlohmann::ordered_json to_json(const FactoredPolynomial& p);
/// Pinch report entry; `bound` labels the interval certificate.
nlohmann::ordered_json to_json(const PinchPoint& pinch, const std::string& bound = "1e-12");

}  // namespace tongues
