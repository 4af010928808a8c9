#include "hyperquot/json_io.hpp"

#include <fstream>

#include "hyperquot/errors.hpp"

namespace hyperquot {

namespace {

Mask index_list_to_mask(const Json& j, int carrier_size, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string(what) + ": expected an index list");
    Mask m = 0;
    for (const auto& e : j) {
        if (!e.is_number_integer())
            throw InvalidInput(std::string(what) + ": index is not an integer");
        const int v = e.get<int>();
        if (v < 0 || v >= carrier_size)
            throw InvalidInput(std::string(what) + ": index out of range");
        m |= bit(v);
    }
    return m;
}

std::vector<std::string> labels_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("labels: expected an array");
    std::vector<std::string> labels;
    for (const auto& e : j) {
        if (!e.is_string()) throw InvalidInput("labels: entry is not a string");
        labels.push_back(e.get<std::string>());
    }
    return labels;
}

}  // namespace

FiniteSpace space_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("space: expected an object");
    if (!j.contains("labels") || !j.contains("opens"))
        throw InvalidInput("space: needs \"labels\" and \"opens\"");
    std::vector<std::string> labels = labels_from_json(j.at("labels"));
    const int n = static_cast<int>(labels.size());
    if (n < 1 || n > kCarrierLimit) throw InvalidInput("space: carrier size out of range");
    if (!j.at("opens").is_array()) throw InvalidInput("space: opens must be an array");
    std::vector<Mask> opens;
    for (const auto& o : j.at("opens")) opens.push_back(index_list_to_mask(o, n, "open"));
    return FiniteSpace{std::move(labels), Topology::from_opens(n, std::move(opens))};
}

Json space_to_json(const FiniteSpace& s) {
    Json j;
    j["labels"] = s.labels;
    Json opens = Json::array();
    if (s.topology.has_opens()) {
        for (Mask o : s.topology.opens()) opens.push_back(mask_to_json(o));
    }
    j["opens"] = opens;
    return j;
}

Json topology_to_json(const Topology& t) {
    Json j;
    Json nbhds = Json::array();
    for (int x = 0; x < t.carrier_size(); ++x) nbhds.push_back(mask_to_json(t.nbhd(x)));
    j["min_nbhd"] = nbhds;
    if (t.has_opens()) {
        Json opens = Json::array();
        for (Mask o : t.opens()) opens.push_back(mask_to_json(o));
        j["opens"] = opens;
    }
    return j;
}

Topology topology_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("min_nbhd"))
        throw InvalidInput("topology: needs \"min_nbhd\"");
    const auto& rows = j.at("min_nbhd");
    if (!rows.is_array() || rows.empty())
        throw InvalidInput("topology: min_nbhd must be a nonempty array");
    const int n = static_cast<int>(rows.size());
    if (n > kCarrierLimit) throw InvalidInput("topology: carrier size out of range");
    std::vector<Mask> nbhds;
    for (const auto& row : rows) nbhds.push_back(index_list_to_mask(row, n, "min_nbhd"));
    return Topology(n, std::move(nbhds));
}

FunctionFamily family_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("family: expected an object");
    if (!j.contains("space") || !j.contains("y_size"))
        throw InvalidInput("family: needs \"space\" and \"y_size\"");
    FiniteSpace space = space_from_json(j.at("space"));
    if (!j.at("y_size").is_number_integer())
        throw InvalidInput("family: y_size must be an integer");
    const int y_size = j.at("y_size").get<int>();
    const bool all = j.value("all", false);
    if (all) return FunctionFamily::all(space, y_size);
    if (!j.contains("tuples")) throw InvalidInput("family: needs \"tuples\" or \"all\": true");
    if (!j.at("tuples").is_array()) throw InvalidInput("family: tuples must be an array");
    std::vector<std::vector<int>> tuples;
    for (const auto& t : j.at("tuples")) {
        if (!t.is_array()) throw InvalidInput("family: tuple must be an array");
        std::vector<int> tuple;
        for (const auto& v : t) {
            if (!v.is_number_integer())
                throw InvalidInput("family: tuple entry is not an integer");
            tuple.push_back(v.get<int>());
        }
        tuples.push_back(std::move(tuple));
    }
    return FunctionFamily::of(space, y_size, std::move(tuples));
}

Json family_to_json(const FunctionFamily& fam) {
    Json j;
    j["space"] = space_to_json(fam.space);
    j["y_size"] = fam.y_size;
    j["all"] = fam.all_of_xy;
    j["tuples"] = fam.tuples;
    return j;
}

FiniteMetricSpace metric_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("metric: expected an object");
    if (j.contains("dist")) {
        if (!j.contains("labels")) throw InvalidInput("metric: dist form needs \"labels\"");
        std::vector<std::string> labels = labels_from_json(j.at("labels"));
        const auto& rows = j.at("dist");
        if (!rows.is_array() || rows.size() != labels.size())
            throw InvalidInput("metric: dist must be a square matrix");
        std::vector<double> flat;
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != labels.size())
                throw InvalidInput("metric: dist must be a square matrix");
            for (const auto& v : row) {
                if (!v.is_number()) throw InvalidInput("metric: distance is not a number");
                flat.push_back(v.get<double>());
            }
        }
        return FiniteMetricSpace::from_matrix(std::move(labels), std::move(flat));
    }
    if (j.contains("coords")) {
        if (j.value("metric", "euclidean") != std::string("euclidean"))
            throw InvalidInput("metric: only \"euclidean\" coordinates are supported");
        const auto& rows = j.at("coords");
        if (!rows.is_array() || rows.empty())
            throw InvalidInput("metric: coords must be a nonempty array");
        std::vector<std::vector<double>> coords;
        for (const auto& row : rows) {
            if (!row.is_array()) throw InvalidInput("metric: coordinate row must be an array");
            std::vector<double> point;
            for (const auto& v : row) {
                if (!v.is_number())
                    throw InvalidInput("metric: coordinate is not a number");
                point.push_back(v.get<double>());
            }
            coords.push_back(std::move(point));
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            labels = labels_from_json(j.at("labels"));
            if (labels.size() != coords.size())
                throw InvalidInput("metric: labels and coords sizes differ");
        } else {
            for (std::size_t i = 0; i < coords.size(); ++i)
                labels.push_back("p" + std::to_string(i));
        }
        return FiniteMetricSpace::from_points(std::move(labels), coords);
    }
    throw InvalidInput("metric: needs \"dist\" or \"coords\"");
}

SubsetSequence sequence_from_json(const Json& j, int carrier_size) {
    if (!j.is_object()) throw InvalidInput("sequence: expected an object");
    SubsetSequence seq;
    if (j.contains("prefix")) {
        if (!j.at("prefix").is_array()) throw InvalidInput("sequence: prefix must be an array");
        for (const auto& t : j.at("prefix"))
            seq.prefix.push_back(index_list_to_mask(t, carrier_size, "prefix term"));
    }
    if (!j.contains("cycle") || !j.at("cycle").is_array() || j.at("cycle").empty())
        throw InvalidInput("sequence: needs a nonempty \"cycle\"");
    for (const auto& t : j.at("cycle"))
        seq.cycle.push_back(index_list_to_mask(t, carrier_size, "cycle term"));
    return seq;
}

Mask point_set_from_json(const Json& j, int carrier_size) {
    return index_list_to_mask(j, carrier_size, "point set");
}

Json mask_to_json(Mask m) {
    Json j = Json::array();
    for_each_bit(m, [&](int i) { j.push_back(i); });
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InvalidInput("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace hyperquot
