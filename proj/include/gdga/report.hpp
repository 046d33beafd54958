#pragma once

#include <string>
#include <deque>
#include <vector>

#include <json.hpp>

namespace gdga {

using json = nlohmann::ordered_json;

struct Check {
    std::string label;
    bool passed = true;
    long long evaluated = 0;
    long long skipped = 0;
    std::string detail;
    json witness;

    void fail(std::string why, json w = nullptr) {
        if (passed) {
            detail = std::move(why);
            witness = std::move(w);
        }
        passed = false;
    }
};

struct Report {
    std::string title;
    std::deque<Check> checks;  // references stay valid across add()

    Check& add(const std::string& label) {
        Check c;
        c.label = label;
        checks.push_back(std::move(c));
        return checks.back();
    }
    void merge(const Report& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const Check* find(const std::string& label) const {
        for (const auto& c : checks)
            if (c.label == label) return &c;
        return nullptr;
    }
    json to_json() const;
    std::string to_text() const;
};

}  // namespace gdga
