#include "gdga/report.hpp"

#include <sstream>

namespace gdga {

json Report::to_json() const {
    json j;
    j["title"] = title;
    j["ok"] = ok();
    j["checks"] = json::array();
    for (const auto& c : checks) {
        json e;
        e["label"] = c.label;
        e["passed"] = c.passed;
        e["evaluated"] = c.evaluated;
        e["skipped"] = c.skipped;
        if (!c.detail.empty()) e["detail"] = c.detail;
        if (!c.witness.is_null()) e["witness"] = c.witness;
        j["checks"].push_back(std::move(e));
    }
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << title << ": " << (ok() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : checks) {
        os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.label << "  (evaluated " << c.evaluated;
        if (c.skipped) os << ", skipped " << c.skipped;
        os << ")";
        if (!c.detail.empty()) os << "  " << c.detail;
        os << "\n";
        if (!c.passed && !c.witness.is_null()) os << "      witness: " << c.witness.dump() << "\n";
    }
    return os.str();
}

}  // namespace gdga
