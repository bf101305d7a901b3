#include "trackstat/classify.hpp"

namespace trackstat {

Classification classify(const Triangulation& T, const Multicurve& m, const ClassifyOptions& opts) {
    if (opts.closed && T.num_vertices() != 1)
        throw SurfaceError("closed-surface naming requires the once-punctured model");
    ShortForm sf = shorten(T, m, opts.shorten);
    CrushResult cr = crush(sf);
    LabeledGraph g = partition_graph(cr);
    g = opts.closed ? drop_half_edges(std::move(g)) : complete(std::move(g));
    Classification out;
    out.name = canonical_name(g);
    out.components = num_components(sf);
    out.primitive = is_primitive(sf);
    return out;
}

}  // namespace trackstat
