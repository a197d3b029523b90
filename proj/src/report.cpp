#include "tongues/report.hpp"

#include "tongues/errors.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace tongues {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

const char* const kCsvHeader =
    "p,q,b,omega_left_lo,omega_left_hi,omega_right_lo,omega_right_hi,width_lb,"
    "b_f,omega_left_f,omega_right_f,width_lb_f,status";

}  // namespace

std::string write_csv(const std::vector<TongueRecord>& records) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << r.p << ',' << r.q << ',' << r.b.str() << ',';
        if (r.resolved()) {
            os << r.omega_left->lo().str() << ',' << r.omega_left->hi().str() << ',' << r.omega_right->lo().str()
               << ',' << r.omega_right->hi().str() << ',';
        } else {
            os << ",,,,";
        }
        const Rational wlb = r.width_lower_bound();
        os << wlb.str() << ',' << fmt("%.17g", r.b.to_double()) << ',';
        if (r.resolved())
            os << fmt("%.17g", r.omega_left->mid().to_double()) << ','
               << fmt("%.17g", r.omega_right->mid().to_double()) << ',';
        else
            os << ",,";
        os << fmt("%.17g", wlb.to_double()) << ',' << (r.resolved() ? "ok" : "unresolved") << '\n';
    }
    return os.str();
}

std::vector<TongueRecord> parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || split(line, ',') != split(kCsvHeader, ','))
        throw ParseError("CSV header does not match the tongue record layout");
    std::vector<TongueRecord> out;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto f = split(line, ',');
        if (f.size() != 13) throw ParseError("CSV row " + std::to_string(row) + " has " + std::to_string(f.size()) +
                                             " fields, expected 13");
        try {
            TongueRecord r;
            r.p = std::stol(f[0]);
            r.q = static_cast<unsigned>(std::stoul(f[1]));
            r.b = Rational::parse(f[2]);
            if (f[12] == "ok") {
                r.omega_left = RationalInterval(Rational::parse(f[3]), Rational::parse(f[4]));
                r.omega_right = RationalInterval(Rational::parse(f[5]), Rational::parse(f[6]));
            } else if (f[12] != "unresolved") {
                throw ParseError("unknown status '" + f[12] + "'");
            }
            if (Rational::parse(f[7]) != r.width_lower_bound())
                throw ParseError("width_lb disagrees with the boundary intervals");
            out.push_back(std::move(r));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("CSV row " + std::to_string(row) + ": " + e.what());
        }
    }
    return out;
}

std::string render_svg(const std::vector<TongueRecord>& records, const std::vector<PinchMarker>& pinches) {
    constexpr double kSize = 600.0;
    constexpr double kMargin = 50.0;
    auto px = [&](double omega) { return fmt("%.2f", kMargin + omega * kSize); };
    auto py = [&](double b) { return fmt("%.2f", kMargin + (1.0 - b) * kSize); };
    static const char* const palette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                          "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

    std::ostringstream os;
    const std::string total = fmt("%.0f", kSize + 2 * kMargin);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\"" << total
       << "\" viewBox=\"0 0 " << total << ' ' << total << "\">\n";
    os << "<defs><clipPath id=\"plot\"><rect x=\"" << px(0) << "\" y=\"" << py(1) << "\" width=\"" << fmt("%.2f", kSize)
       << "\" height=\"" << fmt("%.2f", kSize) << "\"/></clipPath></defs>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Group records by tongue, keeping first-seen order.
    std::vector<std::pair<long, unsigned>> order;
    std::map<std::pair<long, unsigned>, std::vector<const TongueRecord*>> groups;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.p, r.q);
        if (!groups.contains(key)) order.push_back(key);
        groups[key].push_back(&r);
    }
    os << "<g clip-path=\"url(#plot)\">\n";
    for (const auto& key : order) {
        auto rows = groups[key];
        std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->b < b->b; });
        const double centre = static_cast<double>(key.first) / key.second;
        std::vector<std::pair<double, double>> left;
        std::vector<std::pair<double, double>> right;
        if (rows.empty() || !rows.front()->b.is_zero()) {
            left.emplace_back(centre, 0.0);
            right.emplace_back(centre, 0.0);
        }
        for (const auto* r : rows) {
            if (!r->resolved()) continue;
            left.emplace_back(r->omega_left->mid().to_double(), r->b.to_double());
            right.emplace_back(r->omega_right->mid().to_double(), r->b.to_double());
        }
        const char* colour = palette[(key.second - 1) % 8];
        std::string points;
        for (const auto& [o, b] : left) points += px(o) + "," + py(b) + " ";
        for (auto it = right.rbegin(); it != right.rend(); ++it) points += px(it->first) + "," + py(it->second) + " ";
        if (!points.empty()) points.pop_back();
        const std::string label = std::to_string(key.first) + "/" + std::to_string(key.second);
        os << "<polygon data-tongue=\"" << label << "\" points=\"" << points << "\" fill=\"" << colour
           << "\" fill-opacity=\"0.45\" stroke=\"" << colour << "\" stroke-width=\"1\"/>\n";
        if (key.first == 0)
            os << "<polygon data-tongue=\"" << label << "\" transform=\"translate(" << fmt("%.2f", kSize)
               << ",0)\" points=\"" << points << "\" fill=\"" << colour << "\" fill-opacity=\"0.45\" stroke=\""
               << colour << "\" stroke-width=\"1\"/>\n";
    }
    for (const auto& m : pinches)
        os << "<circle class=\"pinch\" cx=\"" << px(m.omega) << "\" cy=\"" << py(m.b) << "\" r=\"3\" fill=\"black\"/>\n";
    os << "</g>\n";

    os << "<rect x=\"" << px(0) << "\" y=\"" << py(1) << "\" width=\"" << fmt("%.2f", kSize) << "\" height=\""
       << fmt("%.2f", kSize) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double t = i / 4.0;
        const std::string label = fmt("%.2f", t);
        os << "<line x1=\"" << px(t) << "\" y1=\"" << py(0) << "\" x2=\"" << px(t) << "\" y2=\"" << fmt("%.2f", kMargin + kSize + 5)
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px(t) << "\" y=\"" << fmt("%.2f", kMargin + kSize + 20)
           << "\" font-size=\"12\" text-anchor=\"middle\">" << label << "</text>\n";
        os << "<line x1=\"" << fmt("%.2f", kMargin - 5) << "\" y1=\"" << py(t) << "\" x2=\"" << px(0) << "\" y2=\""
           << py(t) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt("%.2f", kMargin - 8) << "\" y=\"" << py(t)
           << "\" font-size=\"12\" text-anchor=\"end\" dominant-baseline=\"middle\">" << label << "</text>\n";
    }
    os << "<text x=\"" << px(0.5) << "\" y=\"" << fmt("%.2f", kMargin + kSize + 40)
       << "\" font-size=\"14\" text-anchor=\"middle\">omega</text>\n";
    os << "<text x=\"15\" y=\"" << py(0.5) << "\" font-size=\"14\" text-anchor=\"middle\">b</text>\n";
    os << "</svg>\n";
    return os.str();
}

nlohmann::ordered_json to_json(const PLMap& map) {
    nlohmann::ordered_json out;
    out["breakpoints"] = nlohmann::ordered_json::array();
    for (const auto& x : map.breakpoints()) out["breakpoints"].push_back(x.str());
    out["slopes"] = nlohmann::ordered_json::array();
    for (const auto& s : map.breakpoint_slopes()) out["slopes"].push_back(s.str());
    out["anchor"] = map.anchor().str();
    return out;
}

nlohmann::ordered_json to_json(const StepDensity& density) {
    nlohmann::ordered_json out;
    out["breakpoints"] = nlohmann::ordered_json::array();
    out["values"] = nlohmann::ordered_json::array();
    for (const auto& x : density.knots) out["breakpoints"].push_back(x.str());
    for (const auto& v : density.values) out["values"].push_back(v.str());
    out["integral"] = density.integral().str();
    return out;
}

nlohmann::ordered_json to_json(const Configuration& c) {
    nlohmann::ordered_json out;
    out["p"] = c.p;
    out["q"] = c.q;
    out["m"] = c.m;
    out["marked"] = nlohmann::ordered_json::array();
    for (const auto& x : c.marked) out["marked"].push_back(x.str());
    if (!c.weights.empty()) {
        out["weights"] = nlohmann::ordered_json::array();
        for (const auto& w : c.weights) out["weights"].push_back(w.str());
    }
    return out;
}

nlohmann::ordered_json to_json(const FactoredPolynomial& p) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& f : p.factors()) out.push_back({f.k.str(), std::to_string(f.e)});
    return out;
}

nlohmann::ordered_json to_json(const PinchPoint& pinch, const std::string& bound) {
    nlohmann::ordered_json out;
    out["p"] = pinch.p;
    out["q"] = pinch.q;
    out["j"] = pinch.j;
    if (pinch.b.is_exact())
        out["b"] = {{"exact", pinch.b.exact->str()}};
    else
        out["b"] = {{"poly", to_json(pinch.b.polynomial)},
                    {"interval", {pinch.b.interval.lo().str(), pinch.b.interval.hi().str()}}};
    if (pinch.omega.is_point())
        out["omega"] = pinch.omega.lo().str();
    else
        out["omega"] = {pinch.omega.lo().str(), pinch.omega.hi().str()};
    out["certificate"] =
        pinch.certificate.kind == PinchCertificate::Kind::ExactTranslation ? "exact" : "interval:" + bound;
    return out;
}

}  // namespace tongues
