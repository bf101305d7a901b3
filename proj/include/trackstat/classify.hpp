#pragma once

#include <string>

#include "trackstat/partition_graph.hpp"
#include "trackstat/shorten.hpp"

namespace trackstat {

struct ClassifyOptions {
    bool closed = false;  // treat the one puncture as artificial
    ShortenOptions shorten;
};

struct Classification {
    std::string name;
    long long components = 0;
    bool primitive = false;
};

// shorten, crush, build the partition graph, complete it (or drop the
// hanging half-edges for a closed surface) and emit the canonical name
Classification classify(const Triangulation& T, const Multicurve& m,
                        const ClassifyOptions& opts = {});

}  // namespace trackstat
