#include "acflux/golden.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "acflux/errors.hpp"

namespace acflux {

ModelParams GoldenFile::model() const {
    ModelParams p;
    for (const auto& [k, v] : params) {
        if (k == "epsilon0") p.epsilon0 = v;
        else if (k == "v_ac") p.v_ac = v;
        else if (k == "omega") p.omega = v;
        else if (k == "gamma") p.gamma = v;
        else if (k == "mu") p.mu = v;
        else if (k == "temperature") p.temperature = v;
        else if (k == "band_cutoff") p.band_cutoff = v;
    }
    return p;
}

GoldenFile read_golden(std::istream& in) {
    GoldenFile g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::istringstream ss(line.substr(first + 1));
            std::string word;
            ss >> word;
            if (word == "params") {
                while (ss >> word) {
                    const auto eq = word.find('=');
                    if (eq == std::string::npos) throw ConfigError("golden line " + std::to_string(lineno) + ": bad param '" + word + "'");
                    g.params[word.substr(0, eq)] = std::stod(word.substr(eq + 1));
                }
            } else {
                const auto text = line.find_first_not_of(" \t", first + 1);
                g.comments.push_back(text == std::string::npos ? std::string{} : line.substr(text));
            }
            continue;
        }
        std::istringstream ss(line);
        GoldenRecord r;
        double re = 0.0, im = 0.0;
        if (!(ss >> r.x >> r.y >> re >> im >> r.tol)) {
            throw ConfigError("golden line " + std::to_string(lineno) + ": expected 'x y re im tol'");
        }
        r.value = {re, im};
        g.records.push_back(r);
    }
    return g;
}

GoldenFile read_golden_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open golden file " + path);
    return read_golden(in);
}

void write_golden(std::ostream& out, const GoldenFile& g) {
    char buf[256];
    for (const auto& c : g.comments) out << "# " << c << '\n';
    if (!g.params.empty()) {
        out << "# params";
        for (const auto& [k, v] : g.params) {
            std::snprintf(buf, sizeof buf, " %s=%.17g", k.c_str(), v);
            out << buf;
        }
        out << '\n';
    }
    for (const auto& r : g.records) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.3g\n", r.x, r.y, r.value.real(), r.value.imag(), r.tol);
        out << buf;
    }
}

} // namespace acflux
