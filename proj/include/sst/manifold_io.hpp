#pragma once

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/model.hpp"

namespace sst {

namespace io_detail {

using nlohmann::json;

inline Integer integer_from_json(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Integer(v.get<long long>());
    if (v.is_number_unsigned()) return Integer(v.get<unsigned long long>());
    if (v.is_string()) {
        try {
            return Integer(v.get<std::string>());
        } catch (const std::exception&) {
            throw InputError(where + ": '" + v.get<std::string>() + "' is not a decimal integer");
        }
    }
    throw InputError(where + ": expected an integer (number or decimal string)");
}

inline json integer_to_json(const Integer& v) {
    static const Integer lo = std::numeric_limits<long long>::min();
    static const Integer hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return v.str();
}

inline long long int_field(const json& obj, const std::string& key) {
    if (!obj.contains(key)) throw InputError("missing field '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw InputError("field '" + key + "' must be an integer");
    return v.get<long long>();
}

inline std::vector<long long> int_vector(const json& arr, const std::string& where,
                                         std::size_t expected_len) {
    if (!arr.is_array()) throw InputError(where + ": expected an array");
    if (arr.size() != expected_len)
        throw InputError(where + ": expected " + std::to_string(expected_len) + " entries, got " +
                         std::to_string(arr.size()));
    std::vector<long long> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& v = arr[i];
        if (!v.is_number_integer() && !v.is_number_unsigned())
            throw InputError(where + "[" + std::to_string(i) + "]: expected an integer");
        out.push_back(v.get<long long>());
    }
    return out;
}

}  // namespace io_detail

/// Parses the JSON manifold document. Structural invariants (symmetric gram,
/// coordinate lengths, distinct nonzero SW entries) are enforced here;
/// model-level validation is the caller's business via validate_model.
inline FourManifoldModel parse_manifold(const std::string& text) {
    using io_detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("manifold document must be a JSON object");

    FourManifoldModel M;
    if (!doc.contains("name") || !doc.at("name").is_string())
        throw InputError("missing or non-string field 'name'");
    M.name = doc.at("name").get<std::string>();
    M.b1 = io_detail::int_field(doc, "b1");
    M.b2plus = io_detail::int_field(doc, "b2plus");
    M.b2minus = io_detail::int_field(doc, "b2minus");
    if (M.b1 < 0 || M.b2plus < 0 || M.b2minus < 0)
        throw InputError("Betti numbers must be nonnegative");

    const long long rank_ll = io_detail::int_field(doc, "lattice_rank");
    if (rank_ll < 0) throw InputError("field 'lattice_rank' must be nonnegative");
    const std::size_t rank = static_cast<std::size_t>(rank_ll);

    if (!doc.contains("gram")) throw InputError("missing field 'gram'");
    const json& gram_json = doc.at("gram");
    if (!gram_json.is_array() || gram_json.size() != rank)
        throw InputError("field 'gram' must be an array of " + std::to_string(rank) + " rows");
    std::vector<std::vector<long long>> gram;
    gram.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i)
        gram.push_back(io_detail::int_vector(gram_json[i], "gram row " + std::to_string(i), rank));
    M.lattice = IntersectionLattice(std::move(gram));  // symmetry diagnosed here

    if (!doc.contains("lift")) throw InputError("missing field 'lift'");
    M.lift.upsilon = io_detail::int_vector(doc.at("lift"), "lift", rank);

    if (!doc.contains("basic_classes")) throw InputError("missing field 'basic_classes'");
    const json& classes = doc.at("basic_classes");
    if (!classes.is_array()) throw InputError("field 'basic_classes' must be an array");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const std::string where = "basic_classes[" + std::to_string(i) + "]";
        const json& entry = classes[i];
        if (!entry.is_object()) throw InputError(where + ": expected an object");
        if (!entry.contains("coords")) throw InputError(where + ": missing field 'coords'");
        if (!entry.contains("sw")) throw InputError(where + ": missing field 'sw'");
        CohClass x = io_detail::int_vector(entry.at("coords"), where + ".coords", rank);
        Integer sw = io_detail::integer_from_json(entry.at("sw"), where + ".sw");
        if (sw == 0) throw InputError(where + ": SW value must be nonzero");
        if (M.basic_classes.count(x))
            throw InputError(where + ": duplicate class " + class_to_string(x));
        M.basic_classes.emplace(std::move(x), std::move(sw));
    }

    if (doc.contains("provenance")) {
        if (!doc.at("provenance").is_string())
            throw InputError("field 'provenance' must be a string");
        M.provenance = doc.at("provenance").get<std::string>();
    }
    return M;
}

inline std::string serialize_manifold(const FourManifoldModel& M, bool pretty = true) {
    using io_detail::json;
    json doc;
    doc["name"] = M.name;
    doc["b1"] = M.b1;
    doc["b2plus"] = M.b2plus;
    doc["b2minus"] = M.b2minus;
    doc["lattice_rank"] = M.lattice.rank();
    doc["gram"] = M.lattice.gram_rows();
    doc["lift"] = M.lift.upsilon;
    json classes = json::array();
    for (const auto& [x, sw] : M.basic_classes) {
        json entry;
        entry["coords"] = x;
        entry["sw"] = io_detail::integer_to_json(sw);
        classes.push_back(std::move(entry));
    }
    doc["basic_classes"] = std::move(classes);
    doc["provenance"] = M.provenance;
    return pretty ? doc.dump(2) + "\n" : doc.dump();
}

}  // namespace sst
