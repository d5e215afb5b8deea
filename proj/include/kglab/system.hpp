#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kglab/errors.hpp"

namespace kglab {

/// One Klein-Gordon species: propagation speed c > 0 and mass b > 0.
struct SpeciesParams {
    double speed = 1.0;
    double mass = 1.0;
};

/// Signed species handle: speed and *signed* mass, with the convention
///   c_{-a} = c_a,  b_{-a} = -b_a,  Lambda_{-a} = -Lambda_a.
/// The sign of `mass` carries the sign of the species index.
struct SpeciesRef {
    double speed = 1.0;
    double mass = 1.0;  // signed
};

/// The physical system: d species plus the coupling tensor A_{abc}.
class SystemConfig {
public:
    SystemConfig() = default;

    SystemConfig(std::vector<SpeciesParams> species, std::vector<double> coupling = {})
        : species_(std::move(species)), coupling_(std::move(coupling)) {
        const std::size_t d = species_.size();
        if (d == 0) throw config_error("SystemConfig: need at least one species");
        for (const auto& sp : species_) {
            if (!(sp.speed > 0.0) || !(sp.mass > 0.0))
                throw config_error("SystemConfig: speeds and masses must be positive");
        }
        if (coupling_.empty()) coupling_.assign(d * d * d, 1.0);
        if (coupling_.size() != d * d * d)
            throw config_error("SystemConfig: coupling tensor must have d^3 entries");
        for (double a : coupling_)
            if (!std::isfinite(a)) throw config_error("SystemConfig: coupling entries must be finite");
    }

    int dim() const { return static_cast<int>(species_.size()); }

    const std::vector<SpeciesParams>& species() const { return species_; }

    /// A_{alpha beta gamma}, unsigned indices in {1..d}.
    double coupling(int alpha, int beta, int gamma) const {
        const int d = dim();
        return coupling_[static_cast<std::size_t>((alpha - 1) * d * d + (beta - 1) * d + (gamma - 1))];
    }

    bool coupling_is_zero() const {
        for (double a : coupling_)
            if (a != 0.0) return false;
        return true;
    }

    bool valid_species(int sigma) const {
        const int a = std::abs(sigma);
        return sigma != 0 && a >= 1 && a <= dim();
    }

    /// Resolve a signed index into (speed, signed mass). Throws on bad indices.
    SpeciesRef signed_species(int sigma) const {
        if (!valid_species(sigma))
            throw config_error("invalid species index " + std::to_string(sigma) +
                               " for a system with d = " + std::to_string(dim()));
        const SpeciesParams& sp = species_[static_cast<std::size_t>(std::abs(sigma) - 1)];
        return {sp.speed, sigma > 0 ? sp.mass : -sp.mass};
    }

    double speed(int sigma) const { return signed_species(sigma).speed; }
    double mass(int sigma) const { return signed_species(sigma).mass; }

    double max_speed() const {
        double c = 0.0;
        for (const auto& sp : species_) c = std::max(c, sp.speed);
        return c;
    }

    double min_mass() const {
        double b = species_[0].mass;
        for (const auto& sp : species_) b = std::min(b, sp.mass);
        return b;
    }

private:
    std::vector<SpeciesParams> species_;
    std::vector<double> coupling_;  // row-major d^3
};

/// Parse {"species":[{"c":..,"b":..},...], "coupling":[[[..]]]}.
/// A missing coupling tensor means the all-ones tensor.
inline SystemConfig system_from_json(const nlohmann::json& j) {
    if (!j.contains("species") || !j["species"].is_array() || j["species"].empty())
        throw config_error("system config: \"species\" must be a non-empty array");
    std::vector<SpeciesParams> species;
    for (const auto& s : j["species"]) {
        if (!s.contains("c") || !s.contains("b"))
            throw config_error("system config: each species needs \"c\" and \"b\"");
        species.push_back({s["c"].get<double>(), s["b"].get<double>()});
    }
    const std::size_t d = species.size();
    std::vector<double> coupling;
    if (j.contains("coupling")) {
        const auto& c = j["coupling"];
        if (!c.is_array() || c.size() != d)
            throw config_error("system config: coupling must be a d x d x d nested array");
        coupling.resize(d * d * d);
        for (std::size_t a = 0; a < d; ++a) {
            if (!c[a].is_array() || c[a].size() != d)
                throw config_error("system config: coupling must be a d x d x d nested array");
            for (std::size_t b = 0; b < d; ++b) {
                if (!c[a][b].is_array() || c[a][b].size() != d)
                    throw config_error("system config: coupling must be a d x d x d nested array");
                for (std::size_t g = 0; g < d; ++g)
                    coupling[a * d * d + b * d + g] = c[a][b][g].get<double>();
            }
        }
    }
    return SystemConfig(std::move(species), std::move(coupling));
}

inline nlohmann::json system_to_json(const SystemConfig& cfg) {
    nlohmann::json j;
    j["species"] = nlohmann::json::array();
    for (const auto& sp : cfg.species()) j["species"].push_back({{"c", sp.speed}, {"b", sp.mass}});
    const int d = cfg.dim();
    auto coupling = nlohmann::json::array();
    for (int a = 1; a <= d; ++a) {
        auto plane = nlohmann::json::array();
        for (int b = 1; b <= d; ++b) {
            auto row = nlohmann::json::array();
            for (int g = 1; g <= d; ++g) row.push_back(cfg.coupling(a, b, g));
            plane.push_back(row);
        }
        coupling.push_back(plane);
    }
    j["coupling"] = coupling;
    return j;
}

}  // namespace kglab
