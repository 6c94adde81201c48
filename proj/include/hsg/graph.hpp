#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hsg/common.hpp"
#include "hsg/sparse.hpp"

namespace hsg {

using NodeId = std::int64_t;

// Declares the node types, which type pairs may carry edges, and which types
// are "human" (patient/visit) as opposed to medical codes.
struct Schema {
    std::vector<std::string> node_types;                          // ordered
    std::vector<std::pair<std::string, std::string>> edge_types;  // unordered pairs, stored canonical
    std::vector<std::string> human_types;

    int type_index(const std::string& t) const;
    bool has_type(const std::string& t) const { return type_index(t) >= 0; }
    bool has_edge_type(const std::string& a, const std::string& b) const;
    bool is_human(const std::string& t) const;
    void validate() const;

    static std::pair<std::string, std::string> canonical(std::string a, std::string b);
};

// Node features. `onehot-node` keeps the identity implicit so N x N is never
// materialized; dense kinds hold the matrix explicitly.
struct FeatureMatrix {
    enum class Kind { kIdentity, kDense };
    Kind kind = Kind::kDense;
    long rows = 0;
    long cols = 0;
    Eigen::MatrixXd dense;  // empty for kIdentity

    Eigen::RowVectorXd row(long i) const;
};

enum class FeatureMode { kOnehotType, kOnehotNode, kProvided };

FeatureMode parse_feature_mode(const std::string& name);
std::string feature_mode_name(FeatureMode mode);

// Immutable after construction; safe to share across threads.
class HeteroGraph {
public:
    HeteroGraph() = default;

    const Schema& schema() const { return schema_; }
    long num_nodes() const { return num_nodes_; }
    int num_types() const { return static_cast<int>(schema_.node_types.size()); }

    long type_count(int t) const { return static_cast<long>(keys_[t].size()); }
    long type_count(const std::string& t) const { return type_count(require_type(t)); }
    NodeId type_offset(int t) const { return type_offset_[t]; }

    NodeId global_id(int type, long local) const { return type_offset_[type] + local; }
    int type_of(NodeId global) const;
    long local_of(NodeId global) const { return global - type_offset_[type_of(global)]; }

    const std::string& key_of(NodeId global) const;
    // -1 when the key is not present.
    long local_by_key(int type, const std::string& key) const;

    bool has_adjacency(int a, int b) const;
    // Bipartite 0/1 adjacency, |a| x |b| in local indices. adjacency(a,b) is
    // stored as the exact transpose of adjacency(b,a).
    const CsrU64& adjacency(int a, int b) const;
    const CsrU64& adjacency(const std::string& a, const std::string& b) const;

    long num_edges() const;  // undirected count

    // Per-type provided feature columns (may be empty).
    const std::vector<Eigen::MatrixXd>& provided_features() const { return provided_; }

    int require_type(const std::string& t) const;

    // Construction helpers (used by the loader, synthgen and tests).
    static HeteroGraph build(Schema schema,
                             std::vector<std::vector<std::string>> keys_per_type,
                             const std::vector<std::tuple<int, long, int, long>>& edges,
                             std::vector<Eigen::MatrixXd> provided = {});

    // Returns a copy of this graph with the listed undirected edges removed.
    HeteroGraph without_edges(const std::vector<std::pair<NodeId, NodeId>>& removed) const;

    std::vector<std::tuple<int, long, int, long>> all_edges() const;

private:
    Schema schema_;
    long num_nodes_ = 0;
    std::vector<NodeId> type_offset_;
    std::vector<std::vector<std::string>> keys_;
    std::vector<std::unordered_map<std::string, long>> key_to_local_;
    std::map<std::pair<int, int>, CsrU64> adj_;
    std::vector<Eigen::MatrixXd> provided_;  // per type, possibly 0-column

    friend HeteroGraph load_graph(const std::vector<std::pair<std::string, std::string>>&,
                                  const std::vector<std::string>&, const Schema&);
};

// node_files: (type name, csv path) pairs, one file per node type.
// edge_files: csv files whose '# A,B' comment names the endpoint types.
HeteroGraph load_graph(const std::vector<std::pair<std::string, std::string>>& node_files,
                       const std::vector<std::string>& edge_files, const Schema& schema);

FeatureMatrix default_features(const HeteroGraph& graph, FeatureMode mode);

}  // namespace hsg
