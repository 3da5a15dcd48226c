#pragma once
// JSON experiment configs with dotted-path access; missing keys raise config
// errors naming the key.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnm/reservoir.hpp"

namespace qnm {

class Config {
public:
    static Config load(const std::filesystem::path& path);
    static Config parse(const std::string& text);

    bool has(const std::string& dotted) const;
    double num(const std::string& dotted) const;
    double num_or(const std::string& dotted, double fallback) const;
    long long integer(const std::string& dotted) const;
    long long integer_or(const std::string& dotted, long long fallback) const;
    std::string str(const std::string& dotted) const;
    std::string str_or(const std::string& dotted, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& dotted) const;

    const nlohmann::json& root() const { return j_; }

private:
    const nlohmann::json* find(const std::string& dotted) const;
    const nlohmann::json& require(const std::string& dotted) const;
    nlohmann::json j_;
};

// Builds a ReservoirModel from a config subsection (dotted prefix), e.g.
// {"variant": "vacuum_cubic", "R0": 1.0} or the synthetic "bell" grid.
ReservoirModel reservoir_from_config(const Config& c, const std::string& prefix);

}  // namespace qnm
