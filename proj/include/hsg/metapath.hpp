#pragma once

#include <string>
#include <vector>

#include "hsg/graph.hpp"
#include "hsg/sparse.hpp"

namespace hsg {

// A sequence of node types, e.g. V-D-V: two visits sharing a diagnosis.
struct MetaPath {
    std::vector<std::string> types;

    bool palindromic() const;
    std::string str() const;  // "V-D-V"
    MetaPath reversed() const;

    // Parses "V-D-V" against the schema. Errors name the offending segment
    // and its position.
    static MetaPath parse(const std::string& text, const Schema& schema);
};

enum class Normalization { kSps, kRawPathCount };

Normalization parse_normalization(const std::string& name);
std::string normalization_name(Normalization n);

// Exact number of path instances between endpoint-typed node pairs, in local
// indices: rows index the first type of the path, columns the last.
struct PathCountMatrix {
    MetaPath path;
    CsrU64 counts;  // |t_1| x |t_n|
};

// Self-loop counts used by the similarity denominator. For palindromic paths
// this is the diagonal of the path-count matrix and source == target. For
// asymmetric paths it is the round-trip count along p.reverse(p) for source
// nodes and reverse(p).p for target nodes.
struct SelfCounts {
    MetaPath path;
    std::vector<std::uint64_t> source;  // per |t_1| node
    std::vector<std::uint64_t> target;  // per |t_n| node
};

// One symmetric N x N similarity matrix induced by a meta-path. Both (i,j)
// and (j,i) are materialized with identical values. In raw mode `raw_count`
// holds the symmetrized integer counts and `scale` the global maximum by
// which values were divided (scale == 1 and raw_count empty for sps).
struct SimilaritySubgraph {
    MetaPath path;
    Normalization norm = Normalization::kSps;
    long n = 0;
    std::vector<long> row_ptr;
    std::vector<long> col;
    std::vector<double> value;
    std::vector<std::uint64_t> raw_count;
    double scale = 1.0;

    long nnz() const { return static_cast<long>(col.size()); }
    double at(long i, long j) const;
};

PathCountMatrix path_count(const HeteroGraph& graph, const MetaPath& path);

SelfCounts self_counts(const HeteroGraph& graph, const MetaPath& path);

// SPS_p(i,j) = (PC(i,j) + PC(j,i)) / (PC(i,i) + PC(j,j)), embedded into the
// full node index space. Pairs with zero denominator get 0. Values above 1
// (possible only for even palindromes over same-type edges) are clamped with
// a warning on stderr.
SimilaritySubgraph sps(const HeteroGraph& graph, const PathCountMatrix& pc, const SelfCounts& self);

// Raw-count variant: (PC + PC^T) rescaled by its global maximum.
SimilaritySubgraph raw_subgraph(const HeteroGraph& graph, const PathCountMatrix& pc);

std::vector<SimilaritySubgraph> build_subgraphs(const HeteroGraph& graph,
                                                const std::vector<MetaPath>& paths,
                                                Normalization norm);

// Triplet serialization: '# path=V-D-V norm=sps N=... scale=...' then
// 'i,j,value' with i <= j (the mirror entry is implied). Values are written
// with 17 significant digits; raw mode stores the integer counts.
void write_subgraph(const SimilaritySubgraph& g, const std::string& path);
SimilaritySubgraph read_subgraph(const std::string& path, const Schema& schema);

void write_self_counts(const std::vector<SelfCounts>& all, const HeteroGraph& graph,
                       const std::string& path);
std::vector<SelfCounts> read_self_counts(const std::string& path, const HeteroGraph& graph);

}  // namespace hsg
