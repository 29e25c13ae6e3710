#include "billiard/domain_io.hpp"

#include <fstream>

namespace billiard::geom {

Domain domain_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw DomainError("domain: expected an object with a \"type\" field");
    const std::string type = j["type"].get<std::string>();

    if (type == "ellipse") {
        if (!j.contains("a") || !j.contains("b"))
            throw DomainError("domain: ellipse requires \"a\" and \"b\"");
        Ellipse e{j["a"].get<double>(), j["b"].get<double>()};
        validate(e);
        return e;
    }
    if (type == "support_fourier") {
        if (!j.contains("a0")) throw DomainError("domain: support_fourier requires \"a0\"");
        SupportDomain d;
        d.a0 = j["a0"].get<double>();
        if (j.contains("harmonics")) {
            if (!j["harmonics"].is_array())
                throw DomainError("domain: \"harmonics\" must be an array");
            for (const auto& m : j["harmonics"]) {
                Harmonic hm;
                hm.k = m.at("k").get<int>();
                hm.c = m.value("cos", 0.0);
                hm.s = m.value("sin", 0.0);
                d.harmonics.push_back(hm);
            }
        }
        validate(d);
        return d;
    }
    throw DomainError("domain: unknown type \"" + type + "\"");
}

nlohmann::json domain_to_json(const Domain& d) {
    nlohmann::json j;
    if (const auto* e = std::get_if<Ellipse>(&d)) {
        j["type"] = "ellipse";
        j["a"] = e->a;
        j["b"] = e->b;
    } else {
        const auto& s = std::get<SupportDomain>(d);
        j["type"] = "support_fourier";
        j["a0"] = s.a0;
        j["harmonics"] = nlohmann::json::array();
        for (const auto& m : s.harmonics)
            j["harmonics"].push_back({{"k", m.k}, {"cos", m.c}, {"sin", m.s}});
    }
    return j;
}

Domain load_domain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open domain file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError("domain file " + path + ": " + e.what());
    }
    return domain_from_json(j);
}

}  // namespace billiard::geom
