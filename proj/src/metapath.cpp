#include "hsg/metapath.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>

#include "hsg/csv.hpp"

namespace hsg {

bool MetaPath::palindromic() const {
    return std::equal(types.begin(), types.end(), types.rbegin());
}

std::string MetaPath::str() const {
    std::string s;
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (i) s += '-';
        s += types[i];
    }
    return s;
}

MetaPath MetaPath::reversed() const {
    MetaPath r = *this;
    std::reverse(r.types.begin(), r.types.end());
    return r;
}

MetaPath MetaPath::parse(const std::string& text, const Schema& schema) {
    MetaPath p;
    std::string cur;
    std::vector<std::size_t> starts;
    std::size_t seg_start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '-') {
            p.types.push_back(cur);
            starts.push_back(seg_start);
            cur.clear();
            seg_start = i + 1;
        } else {
            cur.push_back(text[i]);
        }
    }
    if (p.types.size() < 2)
        throw ConfigError("meta-path '" + text + "' must name at least two node types");
    for (std::size_t i = 0; i < p.types.size(); ++i) {
        if (p.types[i].empty())
            throw ConfigError("meta-path '" + text + "': empty segment at position " +
                              std::to_string(starts[i]));
        if (!schema.has_type(p.types[i]))
            throw ConfigError("meta-path '" + text + "': unknown node type '" + p.types[i] +
                              "' at position " + std::to_string(starts[i]));
    }
    for (std::size_t i = 0; i + 1 < p.types.size(); ++i) {
        if (!schema.has_edge_type(p.types[i], p.types[i + 1]))
            throw ConfigError("meta-path '" + text + "': no declared edge type between '" +
                              p.types[i] + "' and '" + p.types[i + 1] + "' at position " +
                              std::to_string(starts[i]));
    }
    return p;
}

Normalization parse_normalization(const std::string& name) {
    if (name == "sps") return Normalization::kSps;
    if (name == "raw_pathcount") return Normalization::kRawPathCount;
    throw ConfigError("unknown normalization '" + name + "'");
}

std::string normalization_name(Normalization n) {
    return n == Normalization::kSps ? "sps" : "raw_pathcount";
}

double SimilaritySubgraph::at(long i, long j) const {
    for (long p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
        if (col[p] == j) return value[p];
    return 0.0;
}

PathCountMatrix path_count(const HeteroGraph& graph, const MetaPath& path) {
    std::string context = "meta-path " + path.str();
    CsrU64 acc = graph.adjacency(path.types[0], path.types[1]);
    for (std::size_t i = 1; i + 1 < path.types.size(); ++i)
        acc = multiply_checked(acc, graph.adjacency(path.types[i], path.types[i + 1]), context);
    return {path, std::move(acc)};
}

static SelfCounts self_counts_from(const PathCountMatrix& pc) {
    std::string context = "meta-path " + pc.path.str();
    SelfCounts s;
    s.path = pc.path;
    if (pc.path.palindromic()) {
        s.source = diagonal(pc.counts);
        s.target = s.source;
    } else {
        s.source = row_square_sums(pc.counts, context);
        s.target = col_square_sums(pc.counts, context);
    }
    return s;
}

SelfCounts self_counts(const HeteroGraph& graph, const MetaPath& path) {
    return self_counts_from(path_count(graph, path));
}

SimilaritySubgraph sps(const HeteroGraph& graph, const PathCountMatrix& pc, const SelfCounts& self) {
    if (pc.path.str() != self.path.str()) throw DataError("sps: self counts computed for another path");
    const std::string& ta = pc.path.types.front();
    const std::string& tb = pc.path.types.back();
    NodeId off_a = graph.type_offset(graph.require_type(ta));
    NodeId off_b = graph.type_offset(graph.require_type(tb));

    bool palin = pc.path.palindromic();
    long clamped = 0;
    std::vector<std::tuple<long, long, double>> entries;  // global (i,j) with i <= j
    const CsrU64& m = pc.counts;
    for (long r = 0; r < m.rows; ++r) {
        for (long p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) {
            long c = m.col[p];
            NodeId gi = off_a + r, gj = off_b + c;
            // Palindromic path counts are exactly symmetric: keep one triangle.
            if (palin && gi > gj) continue;
            double denom = static_cast<double>(self.source[r]) + static_cast<double>(self.target[c]);
            if (denom == 0) continue;
            double v = 2.0 * static_cast<double>(m.val[p]) / denom;
            if (v > 1.0) {
                v = 1.0;
                ++clamped;
            }
            if (v != 0.0) entries.emplace_back(std::min(gi, gj), std::max(gi, gj), v);
        }
    }
    if (clamped > 0)
        std::cerr << "warning: clamped " << clamped << " similarity value(s) above 1 for meta-path "
                  << pc.path.str() << "\n";

    SimilaritySubgraph g;
    g.path = pc.path;
    g.norm = Normalization::kSps;
    g.n = graph.num_nodes();
    // Mirror and build CSR over the global index space.
    std::vector<std::tuple<long, long, double>> full;
    full.reserve(entries.size() * 2);
    for (const auto& [i, j, v] : entries) {
        full.emplace_back(i, j, v);
        if (i != j) full.emplace_back(j, i, v);
    }
    std::sort(full.begin(), full.end());
    g.row_ptr.assign(g.n + 1, 0);
    for (const auto& [i, j, v] : full) {
        g.col.push_back(j);
        g.value.push_back(v);
        g.row_ptr[i + 1]++;
    }
    for (long i = 0; i < g.n; ++i) g.row_ptr[i + 1] += g.row_ptr[i];
    return g;
}

SimilaritySubgraph raw_subgraph(const HeteroGraph& graph, const PathCountMatrix& pc) {
    std::string context = "meta-path " + pc.path.str();
    const std::string& ta = pc.path.types.front();
    const std::string& tb = pc.path.types.back();
    NodeId off_a = graph.type_offset(graph.require_type(ta));
    NodeId off_b = graph.type_offset(graph.require_type(tb));

    // Symmetrize PC + PC^T on the global canvas, exact integer arithmetic.
    std::map<std::pair<long, long>, std::uint64_t> sym;  // upper triangle
    const CsrU64& m = pc.counts;
    for (long r = 0; r < m.rows; ++r) {
        for (long p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) {
            NodeId gi = off_a + r, gj = off_b + m.col[p];
            auto key = gi <= gj ? std::make_pair(gi, gj) : std::make_pair(gj, gi);
            auto [it, inserted] = sym.emplace(key, 0);
            // (PC + PC^T)_ii doubles the diagonal.
            std::uint64_t add = gi == gj ? checked_mul(m.val[p], 2, context) : m.val[p];
            it->second = checked_add(it->second, add, context);
        }
    }
    std::uint64_t max_count = 0;
    for (const auto& [k, v] : sym) max_count = std::max(max_count, v);

    SimilaritySubgraph g;
    g.path = pc.path;
    g.norm = Normalization::kRawPathCount;
    g.n = graph.num_nodes();
    g.scale = max_count == 0 ? 1.0 : static_cast<double>(max_count);

    std::vector<std::tuple<long, long, std::uint64_t>> full;
    full.reserve(sym.size() * 2);
    for (const auto& [k, v] : sym) {
        full.emplace_back(k.first, k.second, v);
        if (k.first != k.second) full.emplace_back(k.second, k.first, v);
    }
    std::sort(full.begin(), full.end());
    g.row_ptr.assign(g.n + 1, 0);
    for (const auto& [i, j, v] : full) {
        g.col.push_back(j);
        g.raw_count.push_back(v);
        g.value.push_back(static_cast<double>(v) / g.scale);
        g.row_ptr[i + 1]++;
    }
    for (long i = 0; i < g.n; ++i) g.row_ptr[i + 1] += g.row_ptr[i];
    return g;
}

std::vector<SimilaritySubgraph> build_subgraphs(const HeteroGraph& graph,
                                                const std::vector<MetaPath>& paths,
                                                Normalization norm) {
    if (paths.empty()) throw ConfigError("at least one meta-path is required");
    std::vector<SimilaritySubgraph> out;
    out.reserve(paths.size());
    for (const auto& p : paths) {
        PathCountMatrix pc = path_count(graph, p);
        if (norm == Normalization::kSps) {
            out.push_back(sps(graph, pc, self_counts_from(pc)));
        } else {
            out.push_back(raw_subgraph(graph, pc));
        }
    }
    return out;
}

void write_subgraph(const SimilaritySubgraph& g, const std::string& path) {
    CsvWriter w(path);
    w.write_raw("# path=" + g.path.str() + " norm=" + normalization_name(g.norm) +
                " N=" + std::to_string(g.n) + " scale=" + format_g17(g.scale));
    w.write_raw("i,j,value");
    bool raw = g.norm == Normalization::kRawPathCount;
    for (long i = 0; i < g.n; ++i) {
        for (long p = g.row_ptr[i]; p < g.row_ptr[i + 1]; ++p) {
            long j = g.col[p];
            if (j < i) continue;  // mirror implied
            std::string v = raw ? std::to_string(g.raw_count[p]) : format_g17(g.value[p]);
            w.write_row({std::to_string(i), std::to_string(j), v});
        }
    }
    w.close();
}

SimilaritySubgraph read_subgraph(const std::string& path, const Schema& schema) {
    CsvFile f = read_csv(path);
    SimilaritySubgraph g;
    std::string path_str;
    double scale = 1.0;
    long n = -1;
    std::string norm_str;
    {
        std::string token;
        std::vector<std::string> tokens;
        for (char c : f.comment) {
            if (c == ' ') {
                if (!token.empty()) tokens.push_back(token);
                token.clear();
            } else {
                token.push_back(c);
            }
        }
        if (!token.empty()) tokens.push_back(token);
        for (const auto& t : tokens) {
            auto eq = t.find('=');
            if (eq == std::string::npos) continue;
            std::string k = t.substr(0, eq), v = t.substr(eq + 1);
            if (k == "path") path_str = v;
            else if (k == "norm") norm_str = v;
            else if (k == "N") n = std::stol(v);
            else if (k == "scale") scale = std::stod(v);
        }
    }
    if (path_str.empty() || norm_str.empty() || n < 0)
        throw DataError(path + ": malformed subgraph header '" + f.comment + "'");
    g.path = MetaPath::parse(path_str, schema);
    g.norm = parse_normalization(norm_str);
    g.n = n;
    g.scale = scale;
    bool raw = g.norm == Normalization::kRawPathCount;

    std::vector<std::tuple<long, long, double, std::uint64_t>> full;
    for (const auto& row : f.rows) {
        if (row.fields.size() != 3)
            throw DataError(path + ":" + std::to_string(row.line) + ": expected i,j,value");
        long i = std::stol(row.fields[0]);
        long j = std::stol(row.fields[1]);
        if (i > j) throw DataError(path + ":" + std::to_string(row.line) + ": expected i <= j");
        if (i < 0 || j >= n) throw DataError(path + ":" + std::to_string(row.line) + ": index out of range");
        std::uint64_t rc = 0;
        double v;
        if (raw) {
            rc = std::stoull(row.fields[2]);
            v = static_cast<double>(rc) / g.scale;
        } else {
            v = std::stod(row.fields[2]);
        }
        full.emplace_back(i, j, v, rc);
        if (i != j) full.emplace_back(j, i, v, rc);
    }
    std::sort(full.begin(), full.end());
    g.row_ptr.assign(g.n + 1, 0);
    for (const auto& [i, j, v, rc] : full) {
        g.col.push_back(j);
        g.value.push_back(v);
        if (raw) g.raw_count.push_back(rc);
        g.row_ptr[i + 1]++;
    }
    for (long i = 0; i < g.n; ++i) g.row_ptr[i + 1] += g.row_ptr[i];
    return g;
}

void write_self_counts(const std::vector<SelfCounts>& all, const HeteroGraph& graph,
                       const std::string& path) {
    CsvWriter w(path);
    w.write_raw("# self counts per meta-path endpoint");
    w.write_raw("path,side,node,count");
    for (const auto& s : all) {
        NodeId off_a = graph.type_offset(graph.require_type(s.path.types.front()));
        NodeId off_b = graph.type_offset(graph.require_type(s.path.types.back()));
        for (std::size_t i = 0; i < s.source.size(); ++i)
            if (s.source[i] != 0)
                w.write_row({s.path.str(), "source", std::to_string(off_a + static_cast<long>(i)),
                             std::to_string(s.source[i])});
        for (std::size_t i = 0; i < s.target.size(); ++i)
            if (s.target[i] != 0)
                w.write_row({s.path.str(), "target", std::to_string(off_b + static_cast<long>(i)),
                             std::to_string(s.target[i])});
    }
    w.close();
}

std::vector<SelfCounts> read_self_counts(const std::string& path, const HeteroGraph& graph) {
    CsvFile f = read_csv(path);
    std::vector<SelfCounts> out;
    std::map<std::string, std::size_t> index;
    for (const auto& row : f.rows) {
        if (row.fields.size() != 4)
            throw DataError(path + ":" + std::to_string(row.line) + ": expected path,side,node,count");
        const std::string& pstr = row.fields[0];
        auto it = index.find(pstr);
        if (it == index.end()) {
            SelfCounts s;
            s.path = MetaPath::parse(pstr, graph.schema());
            s.source.assign(graph.type_count(s.path.types.front()), 0);
            s.target.assign(graph.type_count(s.path.types.back()), 0);
            index[pstr] = out.size();
            out.push_back(std::move(s));
            it = index.find(pstr);
        }
        SelfCounts& s = out[it->second];
        long node = std::stol(row.fields[2]);
        std::uint64_t count = std::stoull(row.fields[3]);
        if (row.fields[1] == "source") {
            NodeId off = graph.type_offset(graph.require_type(s.path.types.front()));
            s.source.at(node - off) = count;
        } else if (row.fields[1] == "target") {
            NodeId off = graph.type_offset(graph.require_type(s.path.types.back()));
            s.target.at(node - off) = count;
        } else {
            throw DataError(path + ":" + std::to_string(row.line) + ": bad side '" + row.fields[1] + "'");
        }
    }
    return out;
}

}  // namespace hsg
