#include <noethkit/chain_io.hpp>
#include <noethkit/errors.hpp>

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace noethkit {

namespace {

rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw usage_error("empty rational literal");
    rational r;
    if (mpq_set_str(r.get_mpq_t(), t.c_str(), 10) != 0 || r.get_den() == 0)
        throw usage_error("invalid rational literal: " + text);
    r.canonicalize();
    return r;
}

rational rational_from_json(const nlohmann::json& v) {
    if (v.is_number_integer()) return rational(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw usage_error("point coordinates must be integers or rational strings");
}

}  // namespace

std::vector<rational> parse_point_csv(const std::string& text) {
    std::vector<rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw usage_error("empty point");
    return out;
}

chain_file parse_chain_file(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("invalid chain file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("m"))
        throw usage_error("chain file must contain integer fields n and m");
    if (!doc["n"].is_number_integer() || !doc["m"].is_number_integer())
        throw usage_error("chain file fields n and m must be integers");
    long n = doc["n"].get<long>(), m = doc["m"].get<long>();
    if (n < 1 || m < 0 || n > 64 || m > 64)
        throw usage_error("chain dimensions out of range");

    arena allowed(std::vector<var_id>{});
    for (long i = 1; i <= n; ++i) allowed.add(var("x" + std::to_string(i)));
    for (long j = 1; j <= m; ++j) allowed.add(var("f" + std::to_string(j)));

    std::vector<std::vector<poly>> g;
    if (m > 0 || doc.contains("g")) {
        if (!doc.contains("g") || !doc["g"].is_array() ||
            doc["g"].size() != static_cast<std::size_t>(n))
            throw usage_error("chain file field g must be an n x m array");
        for (const auto& row : doc["g"]) {
            if (!row.is_array() || row.size() != static_cast<std::size_t>(m))
                throw usage_error("chain file field g must be an n x m array");
            std::vector<poly> prow;
            for (const auto& cell : row) {
                if (!cell.is_string())
                    throw usage_error("chain coefficients must be polynomial strings");
                prow.push_back(poly::parse(cell.get<std::string>(), allowed));
            }
            g.push_back(std::move(prow));
        }
    } else {
        g.assign(static_cast<std::size_t>(n), {});
    }

    chain_file out{chain::make(static_cast<unsigned>(n), static_cast<unsigned>(m),
                               std::move(g)),
                   {}};

    if (doc.contains("delta_expected")) {
        if (!doc["delta_expected"].is_number_integer())
            throw usage_error("delta_expected must be an integer");
        if (doc["delta_expected"].get<std::int64_t>() != out.c.delta())
            throw usage_error("chain degree mismatch: expected delta " +
                              std::to_string(doc["delta_expected"].get<std::int64_t>()) +
                              ", computed " + std::to_string(out.c.delta()));
    }

    if (doc.contains("points")) {
        if (!doc["points"].is_object())
            throw usage_error("points must be an object of coordinate arrays");
        for (const auto& [name, arr] : doc["points"].items()) {
            if (!arr.is_array() || arr.size() != static_cast<std::size_t>(n + m))
                throw usage_error("point " + name + " must list n + m coordinates");
            leaf_point p;
            for (const auto& v : arr) p.coords.push_back(rational_from_json(v));
            out.points.emplace(name, std::move(p));
        }
    }
    return out;
}

chain_file load_chain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open chain file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_chain_file(buf.str());
}

} // namespace noethkit
