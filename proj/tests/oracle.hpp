#pragma once

// Reference values produced by oracles/somos_oracle.py.

#include <json.hpp>

#include <fstream>
#include <stdexcept>

#ifndef SOMOS_ORACLE_PATH
#error "SOMOS_ORACLE_PATH must point at oracles/expected.json"
#endif

inline const nlohmann::json& oracle()
{
    static const nlohmann::json doc = [] {
        std::ifstream in(SOMOS_ORACLE_PATH);
        if (!in)
            throw std::runtime_error("missing oracle file " SOMOS_ORACLE_PATH);
        return nlohmann::json::parse(in);
    }();
    return doc;
}
