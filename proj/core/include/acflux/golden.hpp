// golden.hpp — plain-text reference values.
//
// One record per line: "x y re im tol" (whitespace separated). For the Green
// function x = t and y = eps; real time series use y = 0 and im = 0. Lines
// starting with '#' are comments; "# params key=value ..." lines carry the
// scenario the records belong to.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "acflux/model.hpp"

namespace acflux {

struct GoldenRecord {
    double x = 0.0;
    double y = 0.0;
    complex value;
    double tol = 0.0;
};

struct GoldenFile {
    std::map<std::string, double> params;
    std::vector<std::string> comments;
    std::vector<GoldenRecord> records;

    // ModelParams with the recorded keys applied over the defaults.
    ModelParams model() const;
};

GoldenFile read_golden(std::istream& in);
GoldenFile read_golden_file(const std::string& path);
void write_golden(std::ostream& out, const GoldenFile& g);

} // namespace acflux
