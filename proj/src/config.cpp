#include "synheat/config.hpp"

#include "synheat/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace synheat {

namespace {

void check_keys(const YAML::Node& node, const std::string& section, const std::set<std::string>& allowed) {
    if (!node.IsMap()) {
        throw ValidationError("section '" + section + "' must be a mapping");
    }
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            throw ValidationError("unknown key '" + key + "' in section '" + section + "'");
        }
    }
}

template <class T>
T get(const YAML::Node& node, const std::string& key, const std::string& section) {
    if (!node[key]) {
        throw ValidationError("missing key '" + key + "' in section '" + section + "'");
    }
    try {
        return node[key].as<T>();
    } catch (const YAML::Exception&) {
        throw ValidationError("bad value for '" + key + "' in section '" + section + "'");
    }
}

template <class T>
T get_or(const YAML::Node& node, const std::string& key, const std::string& section, T fallback) {
    return node[key] ? get<T>(node, key, section) : fallback;
}

Eigen::VectorXd vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::size_t one_based(int i, std::size_t N, const std::string& what) {
    if (i < 1 || static_cast<std::size_t>(i) > N) {
        throw ValidationError(what + " index " + std::to_string(i) + " outside 1.." + std::to_string(N));
    }
    return static_cast<std::size_t>(i - 1);
}

ResonatorNetwork parse_network(const YAML::Node& n) {
    check_keys(n, "network", {"omega", "kappa", "T", "hermitian", "couplings"});
    ResonatorNetwork net;
    net.omega = vec(get<std::vector<double>>(n, "omega", "network"));
    net.kappa = vec(get<std::vector<double>>(n, "kappa", "network"));
    const auto N = static_cast<std::size_t>(net.omega.size());
    net.T = n["T"] ? vec(get<std::vector<double>>(n, "T", "network")) : Eigen::VectorXd::Zero(net.omega.size());
    net.hermitian = get_or<bool>(n, "hermitian", "network", false);
    net.g = Eigen::MatrixXcd::Zero(net.omega.size(), net.omega.size());
    std::set<std::pair<std::size_t, std::size_t>> given;
    if (n["couplings"]) {
        if (!n["couplings"].IsSequence()) {
            throw ValidationError("network.couplings must be a list of [i, j, re, im]");
        }
        for (const auto& c : n["couplings"]) {
            std::vector<double> e;
            try {
                e = c.as<std::vector<double>>();
            } catch (const YAML::Exception&) {
                throw ValidationError("network.couplings entries must be [i, j, re, im]");
            }
            if (e.size() != 4 || e[0] != std::floor(e[0]) || e[1] != std::floor(e[1])) {
                throw ValidationError("network.couplings entries must be [i, j, re, im] with integer i, j");
            }
            const std::size_t i = one_based(static_cast<int>(e[0]), N, "coupling");
            const std::size_t j = one_based(static_cast<int>(e[1]), N, "coupling");
            net.g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cplx{e[2], e[3]};
            given.insert({i, j});
        }
    }
    if (net.hermitian) {
        for (const auto& [i, j] : given) {
            if (!given.count({j, i})) {
                const auto ii = static_cast<Eigen::Index>(i);
                const auto jj = static_cast<Eigen::Index>(j);
                net.g(jj, ii) = std::conj(net.g(ii, jj));
            }
        }
    }
    return net;
}

ModulationProtocol parse_modulation(const YAML::Node& m, std::size_t N) {
    check_keys(m, "modulation", {"beta", "Omega", "theta", "theta_over_pi", "mask"});
    ModulationProtocol mod;
    mod.beta = get<double>(m, "beta", "modulation");
    mod.Omega = get<double>(m, "Omega", "modulation");
    if (m["theta"] && m["theta_over_pi"]) {
        throw ValidationError("give either modulation.theta or modulation.theta_over_pi, not both");
    }
    if (m["theta_over_pi"]) {
        mod.theta = std::numbers::pi * vec(get<std::vector<double>>(m, "theta_over_pi", "modulation"));
    } else if (m["theta"]) {
        mod.theta = vec(get<std::vector<double>>(m, "theta", "modulation"));
    } else {
        mod.theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(N));
    }
    mod.mask = m["mask"] ? get<std::vector<int>>(m, "mask", "modulation") : std::vector<int>(N, 1);
    return mod;
}

RunSettings parse_solver(const YAML::Node& s, std::size_t N) {
    check_keys(s, "solver", {"n_max", "quad_tol", "T_hot", "source", "target", "oracle_rtol",
                             "oracle_steps_per_period"});
    RunSettings r;
    if (s["n_max"]) {
        r.n_max = get<int>(s, "n_max", "solver");
        if (*r.n_max < 0) {
            throw ValidationError("solver.n_max must be non-negative");
        }
    }
    r.quad_tol = get_or(s, "quad_tol", "solver", r.quad_tol);
    r.T_hot = get_or(s, "T_hot", "solver", r.T_hot);
    r.oracle_rtol = get_or(s, "oracle_rtol", "solver", r.oracle_rtol);
    r.oracle_steps_per_period = get_or(s, "oracle_steps_per_period", "solver", r.oracle_steps_per_period);
    r.source = one_based(get_or(s, "source", "solver", 1), N, "solver.source");
    r.target = one_based(get_or(s, "target", "solver", static_cast<int>(N)), N, "solver.target");
    if (!(r.quad_tol > 0.0) || !(r.oracle_rtol > 0.0) || r.T_hot < 0.0 || r.oracle_steps_per_period < 8) {
        throw ValidationError("solver tolerances must be positive, T_hot non-negative, steps >= 8");
    }
    return r;
}

} // namespace

Config chain4_config(const Chain4Setup& setup, double beta_ratio, double theta_over_pi) {
    Config c;
    auto [net, mod] = chain4_from_setup(setup, beta_ratio, theta_over_pi * std::numbers::pi);
    net.T[0] = setup.T_hot;
    net.T[3] = setup.T_hot;
    c.net = std::move(net);
    c.mod = std::move(mod);
    c.settings.T_hot = setup.T_hot;
    c.chain4 = setup;
    return c;
}

Config parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ValidationError(std::string("malformed YAML: ") + e.what());
    }
    check_keys(root, "top level", {"constants", "network", "modulation", "chain4", "solver"});

    PhysicalConstants consts;
    if (root["constants"]) {
        check_keys(root["constants"], "constants", {"hbar", "kB"});
        consts.hbar = get_or(root["constants"], "hbar", "constants", consts.hbar);
        consts.kB = get_or(root["constants"], "kB", "constants", consts.kB);
    }

    Config c;
    if (root["chain4"]) {
        if (root["network"] || root["modulation"]) {
            throw ValidationError("chain4 replaces network and modulation; give one or the other");
        }
        const YAML::Node& n = root["chain4"];
        check_keys(n, "chain4",
                   {"omega0", "kappa_ratio", "g_ratio", "beta_ratio", "Omega_ratio", "theta_over_pi", "T_hot"});
        Chain4Setup s;
        s.omega0 = get_or(n, "omega0", "chain4", s.omega0);
        s.kappa_ratio = get_or(n, "kappa_ratio", "chain4", s.kappa_ratio);
        s.g_ratio = get_or(n, "g_ratio", "chain4", s.g_ratio);
        s.Omega_ratio = get_or(n, "Omega_ratio", "chain4", s.Omega_ratio);
        s.T_hot = get_or(n, "T_hot", "chain4", s.T_hot);
        c = chain4_config(s, get_or(n, "beta_ratio", "chain4", 0.0), get_or(n, "theta_over_pi", "chain4", 0.0));
    } else {
        if (!root["network"] || !root["modulation"]) {
            throw ValidationError("config needs either chain4 or both network and modulation");
        }
        c.net = parse_network(root["network"]);
        c.mod = parse_modulation(root["modulation"], c.net.size());
    }
    c.consts = consts;
    if (root["solver"]) {
        const double chain_hot = c.settings.T_hot;
        c.settings = parse_solver(root["solver"], c.net.size());
        if (c.chain4) {
            if (!root["solver"]["T_hot"]) {
                c.settings.T_hot = chain_hot;
            }
            c.net.T[0] = c.settings.T_hot;
            c.net.T[3] = c.settings.T_hot;
        }
    } else if (!c.chain4) {
        c.settings.target = c.net.size() - 1;
    }
    c.settings.consts = consts;

    const auto N = static_cast<Eigen::Index>(c.net.size());
    if (c.net.kappa.size() != N || c.net.T.size() != N || c.mod.theta.size() != N ||
        static_cast<Eigen::Index>(c.mod.mask.size()) != N) {
        throw ValidationError("omega, kappa, T, theta and mask must all have length N");
    }
    require_valid(c.net, c.mod, consts);
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

} // namespace synheat
