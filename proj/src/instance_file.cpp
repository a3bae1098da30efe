#include "kcof/instance_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kcof/error.hpp"

namespace kcof {

namespace {

using json = nlohmann::ordered_json;

Rational rational_from(const json& v, const std::string& where)
{
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const Error& e) {
            fail(ErrorCode::Parse, where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) {
        return v.is_number_unsigned() ? Rational(mpq_class(std::to_string(v.get<std::uint64_t>())))
                                      : Rational(v.get<std::int64_t>());
    }
    fail(ErrorCode::Parse, where + ": expected a rational string such as \"3/2\"");
}

std::vector<Rational> rationals_from(const json& v, const std::string& field)
{
    if (!v.is_array()) {
        fail(ErrorCode::Parse, "\"" + field + "\" must be an array");
    }
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(rational_from(v[i], field + "[" + std::to_string(i + 1) + "]"));
    }
    return out;
}

} // namespace

GameInstance InstanceFile::game() const { return GameInstance(k, beliefs, labels); }

InstanceFile parse_instance(const std::string& json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorCode::Parse, "instance document must be a JSON object");
    }

    InstanceFile f;
    if (!doc.contains("k") || !doc["k"].is_number_integer()) {
        fail(ErrorCode::Parse, "\"k\" must be an integer");
    }
    const auto k = doc["k"].get<std::int64_t>();
    if (k < 1 || k > 1'000'000) {
        fail(ErrorCode::InvalidArgument, "k must be a positive integer");
    }
    f.k = static_cast<int>(k);
    if (!doc.contains("beliefs")) {
        fail(ErrorCode::Parse, "missing \"beliefs\"");
    }
    f.beliefs = rationals_from(doc["beliefs"], "beliefs");
    if (doc.contains("labels")) {
        const json& labels = doc["labels"];
        if (!labels.is_array()) {
            fail(ErrorCode::Parse, "\"labels\" must be an array of strings");
        }
        for (const auto& l : labels) {
            if (!l.is_string()) {
                fail(ErrorCode::Parse, "\"labels\" must be an array of strings");
            }
            f.labels.push_back(l.get<std::string>());
        }
    }
    const GameInstance inst = f.game(); // validates order and size

    if (doc.contains("opinions") && !doc["opinions"].is_null()) {
        f.opinions = rationals_from(doc["opinions"], "opinions");
        validate_opinions(inst, *f.opinions);
    }
    if (doc.contains("mixed") && !doc["mixed"].is_null()) {
        const json& m = doc["mixed"];
        if (!m.is_array()) {
            fail(ErrorCode::Parse, "\"mixed\" must be an array with one support list per player");
        }
        RandomizedOpinionVector rz;
        for (std::size_t i = 0; i < m.size(); ++i) {
            const std::string who = "mixed[" + std::to_string(i + 1) + "]";
            if (!m[i].is_array()) {
                fail(ErrorCode::Parse, who + " must be a list of [opinion, probability] pairs");
            }
            MixedStrategy strategy;
            for (std::size_t t = 0; t < m[i].size(); ++t) {
                const json& pair = m[i][t];
                const std::string at = who + "[" + std::to_string(t + 1) + "]";
                if (!pair.is_array() || pair.size() != 2) {
                    fail(ErrorCode::Parse, at + " must be an [opinion, probability] pair");
                }
                strategy.push_back({rational_from(pair[0], at), rational_from(pair[1], at)});
            }
            rz.push_back(std::move(strategy));
        }
        validate_randomized(inst, rz);
        f.mixed = std::move(rz);
    }
    return f;
}

InstanceFile load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::string to_json(const InstanceFile& f, int indent)
{
    auto strings = [](const std::vector<Rational>& xs) {
        json a = json::array();
        for (const auto& x : xs) {
            a.push_back(x.str());
        }
        return a;
    };
    json doc;
    doc["k"] = f.k;
    doc["beliefs"] = strings(f.beliefs);
    if (!f.labels.empty()) {
        doc["labels"] = f.labels;
    }
    if (f.opinions) {
        doc["opinions"] = strings(*f.opinions);
    }
    if (f.mixed) {
        json m = json::array();
        for (const auto& strategy : *f.mixed) {
            json s = json::array();
            for (const auto& w : strategy) {
                s.push_back({w.opinion.str(), w.probability.str()});
            }
            m.push_back(std::move(s));
        }
        doc["mixed"] = std::move(m);
    }
    return doc.dump(indent);
}

} // namespace kcof
