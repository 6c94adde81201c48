#include "hsg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "hsg/csv.hpp"

namespace hsg {

int Schema::type_index(const std::string& t) const {
    for (std::size_t i = 0; i < node_types.size(); ++i)
        if (node_types[i] == t) return static_cast<int>(i);
    return -1;
}

std::pair<std::string, std::string> Schema::canonical(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

bool Schema::has_edge_type(const std::string& a, const std::string& b) const {
    auto want = canonical(a, b);
    for (const auto& e : edge_types)
        if (canonical(e.first, e.second) == want) return true;
    return false;
}

bool Schema::is_human(const std::string& t) const {
    return std::find(human_types.begin(), human_types.end(), t) != human_types.end();
}

void Schema::validate() const {
    std::set<std::string> seen;
    for (const auto& t : node_types) {
        if (t.empty()) throw ConfigError("schema: empty node type name");
        if (!seen.insert(t).second) throw ConfigError("schema: duplicate node type '" + t + "'");
    }
    for (const auto& [a, b] : edge_types) {
        if (type_index(a) < 0 || type_index(b) < 0)
            throw ConfigError("schema: edge type (" + a + "," + b + ") references undeclared node type");
    }
    for (const auto& t : human_types)
        if (type_index(t) < 0)
            throw ConfigError("schema: human type '" + t + "' is not a declared node type");
}

Eigen::RowVectorXd FeatureMatrix::row(long i) const {
    if (kind == Kind::kIdentity) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(cols);
        r(i) = 1.0;
        return r;
    }
    return dense.row(i);
}

FeatureMode parse_feature_mode(const std::string& name) {
    if (name == "onehot-type") return FeatureMode::kOnehotType;
    if (name == "onehot-node") return FeatureMode::kOnehotNode;
    if (name == "provided") return FeatureMode::kProvided;
    throw ConfigError("unknown feature mode '" + name + "'");
}

std::string feature_mode_name(FeatureMode mode) {
    switch (mode) {
        case FeatureMode::kOnehotType: return "onehot-type";
        case FeatureMode::kOnehotNode: return "onehot-node";
        case FeatureMode::kProvided: return "provided";
    }
    return "?";
}

int HeteroGraph::type_of(NodeId global) const {
    for (int t = num_types() - 1; t >= 0; --t)
        if (global >= type_offset_[t]) return t;
    throw DataError("node id out of range");
}

const std::string& HeteroGraph::key_of(NodeId global) const {
    int t = type_of(global);
    return keys_[t][global - type_offset_[t]];
}

long HeteroGraph::local_by_key(int type, const std::string& key) const {
    const auto& m = key_to_local_[type];
    auto it = m.find(key);
    return it == m.end() ? -1 : it->second;
}

int HeteroGraph::require_type(const std::string& t) const {
    int i = schema_.type_index(t);
    if (i < 0) throw DataError("unknown node type '" + t + "'");
    return i;
}

bool HeteroGraph::has_adjacency(int a, int b) const {
    return adj_.count({a, b}) > 0;
}

const CsrU64& HeteroGraph::adjacency(int a, int b) const {
    auto it = adj_.find({a, b});
    if (it == adj_.end())
        throw DataError("no declared edge type between '" + schema_.node_types[a] + "' and '" +
                        schema_.node_types[b] + "'");
    return it->second;
}

const CsrU64& HeteroGraph::adjacency(const std::string& a, const std::string& b) const {
    return adjacency(require_type(a), require_type(b));
}

long HeteroGraph::num_edges() const {
    long twice = 0;
    for (const auto& [k, m] : adj_) twice += m.nnz();
    return twice / 2;
}

HeteroGraph HeteroGraph::build(Schema schema, std::vector<std::vector<std::string>> keys_per_type,
                               const std::vector<std::tuple<int, long, int, long>>& edges,
                               std::vector<Eigen::MatrixXd> provided) {
    schema.validate();
    HeteroGraph g;
    g.schema_ = std::move(schema);
    int T = g.num_types();
    if (static_cast<int>(keys_per_type.size()) != T)
        throw DataError("keys_per_type size does not match schema");
    g.keys_ = std::move(keys_per_type);
    g.key_to_local_.resize(T);
    g.type_offset_.resize(T);
    long off = 0;
    for (int t = 0; t < T; ++t) {
        g.type_offset_[t] = off;
        auto& m = g.key_to_local_[t];
        for (long i = 0; i < static_cast<long>(g.keys_[t].size()); ++i) {
            if (g.keys_[t][i].empty()) throw DataError("empty node key in type " + g.schema_.node_types[t]);
            if (!m.emplace(g.keys_[t][i], i).second)
                throw DataError("duplicate node key '" + g.keys_[t][i] + "' in type " +
                                g.schema_.node_types[t]);
        }
        off += static_cast<long>(g.keys_[t].size());
    }
    g.num_nodes_ = off;

    // Collect per directed type pair, dedup, mirror.
    std::map<std::pair<int, int>, std::vector<std::tuple<long, long, std::uint64_t>>> trips;
    for (const auto& [ta, la, tb, lb] : edges) {
        if (ta == tb && la == lb) throw DataError("self-edge rejected");
        if (!g.schema_.has_edge_type(g.schema_.node_types[ta], g.schema_.node_types[tb]))
            throw DataError("edge between undeclared type pair (" + g.schema_.node_types[ta] + "," +
                            g.schema_.node_types[tb] + ")");
        trips[{ta, tb}].emplace_back(la, lb, 1);
        trips[{tb, ta}].emplace_back(lb, la, 1);
    }
    // Every declared pair gets a (possibly empty) adjacency, both directions.
    for (const auto& [a, b] : g.schema_.edge_types) {
        int ia = g.schema_.type_index(a), ib = g.schema_.type_index(b);
        trips[{ia, ib}];
        trips[{ib, ia}];
    }
    for (auto& [key, tl] : trips) {
        // Dedup (same edge listed twice collapses to one, not a count of 2).
        std::sort(tl.begin(), tl.end());
        tl.erase(std::unique(tl.begin(), tl.end()), tl.end());
        g.adj_[key] =
            CsrU64::from_triplets(g.type_count(key.first), g.type_count(key.second), std::move(tl));
    }

    if (!provided.empty()) {
        if (static_cast<int>(provided.size()) != T) throw DataError("provided features: wrong type count");
        for (int t = 0; t < T; ++t)
            if (provided[t].size() > 0 && provided[t].rows() != g.type_count(t))
                throw DataError("provided features: row count mismatch for type " +
                                g.schema_.node_types[t]);
        g.provided_ = std::move(provided);
    } else {
        g.provided_.resize(T);
    }
    return g;
}

std::vector<std::tuple<int, long, int, long>> HeteroGraph::all_edges() const {
    std::vector<std::tuple<int, long, int, long>> out;
    for (const auto& [key, m] : adj_) {
        auto [a, b] = key;
        if (a > b) continue;  // one direction is enough; (a,a) pairs stored once
        for (long r = 0; r < m.rows; ++r)
            for (long p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) {
                if (a == b && m.col[p] < r) continue;
                out.emplace_back(a, r, b, m.col[p]);
            }
    }
    return out;
}

HeteroGraph HeteroGraph::without_edges(const std::vector<std::pair<NodeId, NodeId>>& removed) const {
    std::set<std::pair<NodeId, NodeId>> gone;
    for (auto [u, v] : removed) {
        gone.insert({u, v});
        gone.insert({v, u});
    }
    std::vector<std::tuple<int, long, int, long>> kept;
    for (const auto& [ta, la, tb, lb] : all_edges()) {
        NodeId u = type_offset_[ta] + la, v = type_offset_[tb] + lb;
        if (!gone.count({u, v})) kept.emplace_back(ta, la, tb, lb);
    }
    return build(schema_, keys_, kept, provided_);
}

HeteroGraph load_graph(const std::vector<std::pair<std::string, std::string>>& node_files,
                       const std::vector<std::string>& edge_files, const Schema& schema) {
    schema.validate();
    int T = static_cast<int>(schema.node_types.size());
    std::vector<std::vector<std::string>> keys(T);
    std::vector<Eigen::MatrixXd> provided(T);
    std::vector<bool> file_seen(T, false);

    for (const auto& [type_name, path] : node_files) {
        int t = schema.type_index(type_name);
        if (t < 0) throw DataError("node file " + path + ": undeclared type '" + type_name + "'");
        if (file_seen[t]) throw DataError("node type '" + type_name + "' given twice");
        file_seen[t] = true;
        CsvFile f = read_csv(path);
        if (f.header.empty() || f.header[0] != "key")
            throw DataError(path + ": first header column must be 'key'");
        long fcols = static_cast<long>(f.header.size()) - 1;
        Eigen::MatrixXd feats(static_cast<long>(f.rows.size()), fcols);
        for (std::size_t i = 0; i < f.rows.size(); ++i) {
            const auto& row = f.rows[i];
            if (static_cast<long>(row.fields.size()) != fcols + 1)
                throw DataError(path + ":" + std::to_string(row.line) + ": expected " +
                                std::to_string(fcols + 1) + " fields, got " +
                                std::to_string(row.fields.size()));
            keys[t].push_back(row.fields[0]);
            for (long c = 0; c < fcols; ++c) {
                double v;
                try {
                    v = std::stod(row.fields[c + 1]);
                } catch (const std::exception&) {
                    throw DataError(path + ":" + std::to_string(row.line) + ": bad feature value '" +
                                    row.fields[c + 1] + "'");
                }
                if (!std::isfinite(v))
                    throw DataError(path + ":" + std::to_string(row.line) + ": non-finite feature value");
                feats(static_cast<long>(i), c) = v;
            }
        }
        provided[t] = std::move(feats);
    }

    // Key lookup for edge resolution.
    std::vector<std::unordered_map<std::string, long>> lookup(T);
    for (int t = 0; t < T; ++t)
        for (long i = 0; i < static_cast<long>(keys[t].size()); ++i) lookup[t][keys[t][i]] = i;

    std::vector<std::tuple<int, long, int, long>> edges;
    for (const auto& path : edge_files) {
        CsvFile f = read_csv(path);
        auto types = split_csv_line(f.comment);
        if (types.size() != 2)
            throw DataError(path + ": expected '# A,B' type comment naming the two endpoint types");
        for (auto& s : types) {
            while (!s.empty() && s.front() == ' ') s.erase(s.begin());
            while (!s.empty() && s.back() == ' ') s.pop_back();
        }
        int ta = schema.type_index(types[0]);
        int tb = schema.type_index(types[1]);
        if (ta < 0 || tb < 0)
            throw DataError(path + ": undeclared node type in comment '# " + f.comment + "'");
        if (!schema.has_edge_type(types[0], types[1]))
            throw DataError(path + ": edge type (" + types[0] + "," + types[1] +
                            ") is not declared in the schema");
        if (f.header != std::vector<std::string>{"src_key", "dst_key"})
            throw DataError(path + ": header must be 'src_key,dst_key'");
        for (const auto& row : f.rows) {
            if (row.fields.size() != 2)
                throw DataError(path + ":" + std::to_string(row.line) + ": expected 2 fields");
            auto ia = lookup[ta].find(row.fields[0]);
            if (ia == lookup[ta].end())
                throw DataError(path + ":" + std::to_string(row.line) + ": unknown node key '" +
                                row.fields[0] + "' of type " + types[0]);
            auto ib = lookup[tb].find(row.fields[1]);
            if (ib == lookup[tb].end())
                throw DataError(path + ":" + std::to_string(row.line) + ": unknown node key '" +
                                row.fields[1] + "' of type " + types[1]);
            if (ta == tb && ia->second == ib->second)
                throw DataError(path + ":" + std::to_string(row.line) + ": self-edge '" +
                                row.fields[0] + "' rejected");
            edges.emplace_back(ta, ia->second, tb, ib->second);
        }
    }

    return HeteroGraph::build(schema, std::move(keys), edges, std::move(provided));
}

FeatureMatrix default_features(const HeteroGraph& graph, FeatureMode mode) {
    FeatureMatrix f;
    f.rows = graph.num_nodes();
    switch (mode) {
        case FeatureMode::kOnehotNode:
            f.kind = FeatureMatrix::Kind::kIdentity;
            f.cols = graph.num_nodes();
            return f;
        case FeatureMode::kOnehotType: {
            f.kind = FeatureMatrix::Kind::kDense;
            f.cols = graph.num_types();
            f.dense = Eigen::MatrixXd::Zero(f.rows, f.cols);
            for (long i = 0; i < f.rows; ++i) f.dense(i, graph.type_of(i)) = 1.0;
            return f;
        }
        case FeatureMode::kProvided: {
            const auto& per_type = graph.provided_features();
            long cols = -1;
            for (int t = 0; t < graph.num_types(); ++t) {
                long c = per_type[t].cols();
                if (graph.type_count(t) == 0) continue;
                if (c == 0)
                    throw DataError("provided features requested but type '" +
                                    graph.schema().node_types[t] + "' has no feature columns");
                if (cols < 0) cols = c;
                if (c != cols)
                    throw DataError("provided features: inconsistent column count across types");
            }
            if (cols < 0) throw DataError("provided features requested but graph has no nodes");
            f.kind = FeatureMatrix::Kind::kDense;
            f.cols = cols;
            f.dense.resize(f.rows, cols);
            for (int t = 0; t < graph.num_types(); ++t) {
                if (graph.type_count(t) == 0) continue;
                f.dense.block(graph.type_offset(t), 0, graph.type_count(t), cols) = per_type[t];
            }
            return f;
        }
    }
    throw ConfigError("unreachable feature mode");
}

}  // namespace hsg
