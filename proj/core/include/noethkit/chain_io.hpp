#pragma once

#include <noethkit/chain.hpp>

#include <map>
#include <string>

namespace noethkit {

// A chain loaded from its JSON description: integer fields "n" and "m", an
// n x m array "g" of polynomial strings, an optional "delta_expected"
// validation field, and an optional "points" object of named coordinate
// arrays (length n + m, entries integers or "p/q" strings).
struct chain_file {
    chain c;
    std::map<std::string, leaf_point> points;
};

chain_file parse_chain_file(const std::string& text);
chain_file load_chain_file(const std::string& path);

// Parses a comma-separated list of rationals, e.g. "0,1/2,-3".
std::vector<rational> parse_point_csv(const std::string& text);

} // namespace noethkit
