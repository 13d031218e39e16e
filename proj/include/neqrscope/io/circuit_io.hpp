#ifndef NEQRSCOPE_IO_CIRCUIT_IO_HPP
#define NEQRSCOPE_IO_CIRCUIT_IO_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "neqrscope/circuit.hpp"
#include "neqrscope/error.hpp"

namespace neqrscope::io {

using Json = nlohmann::ordered_json;

inline constexpr int kCircuitVersion = 1;
/// The only qubit-ordering convention accepted in documents: qubit 0 is the
/// least significant basis bit, registers ordered color, column, row.
inline constexpr std::string_view kQubitOrder = "lsb0:color,col,row";

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw FormatError(path + ": " + what);
}

inline const Json& field(const Json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) {
        fail(path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path + "/" + key, "missing field");
    }
    return *it;
}

inline int int_field(const Json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_number_integer()) {
        fail(path + "/" + key, "expected an integer");
    }
    return v.get<int>();
}

inline const Json& array_field(const Json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_array()) {
        fail(path + "/" + key, "expected an array");
    }
    return v;
}

inline std::string string_field(const Json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_string()) {
        fail(path + "/" + key, "expected a string");
    }
    return v.get<std::string>();
}

inline Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed document: ") + e.what());
    }
}

} // namespace detail

[[nodiscard]] inline Json circuit_to_json(const Circuit& circuit) {
    Json gates = Json::array();
    for (const auto& composite : circuit.gates) {
        Json basic = Json::array();
        for (const auto& g : composite.gates) {
            basic.push_back(Json{{"kind", std::string(to_string(g.kind))}, {"target", g.target}, {"controls", g.controls}});
        }
        gates.push_back(Json{{"name", composite.name}, {"basic_gates", std::move(basic)}});
    }
    return Json{{"version", kCircuitVersion},
                {"layout", {{"n", circuit.layout.n}, {"b", circuit.layout.b}}},
                {"qubit_order", std::string(kQubitOrder)},
                {"gates", std::move(gates)}};
}

/// Validates a parsed circuit document. `root` names the document's location
/// inside a larger document for error messages.
[[nodiscard]] inline Circuit circuit_from_json(const Json& doc, const std::string& root = "") {
    using namespace detail;
    const int version = int_field(doc, root, "version");
    if (version != kCircuitVersion) {
        fail(root + "/version", "unsupported version " + std::to_string(version));
    }
    const auto order = string_field(doc, root, "qubit_order");
    if (order != kQubitOrder) {
        fail(root + "/qubit_order", "unsupported qubit order '" + order + "' (expected '" +
                                        std::string(kQubitOrder) + "')");
    }
    const auto& layout_obj = field(doc, root, "layout");
    NeqrLayout layout;
    layout.n = int_field(layout_obj, root + "/layout", "n");
    layout.b = int_field(layout_obj, root + "/layout", "b");
    try {
        layout.validate();
    } catch (const Error& e) {
        fail(root + "/layout", e.what());
    }

    Circuit circuit(layout);
    const auto& gates = array_field(doc, root, "gates");
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string gpath = root + "/gates/" + std::to_string(i);
        CompositeGate composite;
        composite.name = string_field(gates[i], gpath, "name");
        if (composite.name.empty()) {
            fail(gpath + "/name", "empty gate name");
        }
        const auto& basic = array_field(gates[i], gpath, "basic_gates");
        for (std::size_t j = 0; j < basic.size(); ++j) {
            const std::string bpath = gpath + "/basic_gates/" + std::to_string(j);
            BasicGate g;
            const auto kind = string_field(basic[j], bpath, "kind");
            if (kind == "h") {
                g.kind = GateKind::H;
            } else if (kind == "x") {
                g.kind = GateKind::X;
            } else if (kind == "mcx") {
                g.kind = GateKind::MCX;
            } else {
                fail(bpath + "/kind", "unknown gate kind '" + kind + "'");
            }
            g.target = int_field(basic[j], bpath, "target");
            if (basic[j].contains("controls")) {
                const auto& controls = array_field(basic[j], bpath, "controls");
                for (std::size_t k = 0; k < controls.size(); ++k) {
                    if (!controls[k].is_number_integer()) {
                        fail(bpath + "/controls/" + std::to_string(k), "expected an integer");
                    }
                    g.controls.push_back(controls[k].get<int>());
                }
            }
            try {
                g.validate(layout.qubit_count());
            } catch (const InvalidGate& e) {
                throw InvalidGate(bpath + ": " + e.what());
            }
            composite.gates.push_back(std::move(g));
        }
        circuit.gates.push_back(std::move(composite));
    }
    return circuit;
}

[[nodiscard]] inline std::string serialize_circuit(const Circuit& circuit) {
    return circuit_to_json(circuit).dump(2) + "\n";
}

/// Throws FormatError on schema problems and InvalidGate on bad qubit indices.
[[nodiscard]] inline Circuit parse_circuit(std::string_view text) {
    return circuit_from_json(detail::parse_json(text));
}

} // namespace neqrscope::io

#endif
