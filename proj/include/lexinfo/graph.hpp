#pragma once

#include <functional>
#include <vector>

#include "lexinfo/rng.hpp"
#include "lexinfo/tensor.hpp"

namespace lexinfo {

// Handle to a node in a Graph's tape.
struct Val {
    int i = -1;
    bool valid() const { return i >= 0; }
};

// Reverse-mode tape. Nodes are created in topological order by construction,
// so the backward sweep is a single reverse pass. One graph per training
// batch; values live as long as the graph does.
class Graph {
public:
    Graph() = default;
    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    Val leaf(Tensor t);

    // Linear algebra.
    Val matmul(Val a, Val b);     // (m,k) x (k,n) -> (m,n)
    Val matmul_nt(Val a, Val b);  // (m,k) x (n,k)^T -> (m,n)
    Val matvec(Val m, Val x);     // (m,k) x (k) -> (m)

    // Elementwise.
    Val add(Val a, Val b);
    Val mul(Val a, Val b);
    Val scale(Val a, double c);
    Val add_rowvec(Val m, Val b);  // broadcast b over rows of m
    Val sigmoid(Val a);
    Val tanh_op(Val a);
    Val relu(Val a);

    // Shape surgery.
    Val slice(Val a, std::size_t offset, std::size_t len);  // 1-D
    Val row(Val m, std::size_t r);                           // (m,n) -> (n)
    Val embed_row(Val table, std::size_t id);                // table row -> (d)
    Val embed_rows(Val table, const std::vector<int>& ids);  // -> (L,d)
    Val concat_cols(const std::vector<Val>& parts);          // same row count

    // Normalization and loss.
    Val row_softmax(Val m);
    Val layer_norm(Val x, Val gamma, Val beta, double eps = 1e-5);  // per row
    Val log_softmax(Val z);             // 1-D
    Val nll(Val log_probs, std::size_t target);  // scalar, nats
    Val sum_scalars(const std::vector<Val>& xs);

    // Training-time regularization; mask drawn from rng, scaled by 1/(1-rate).
    Val dropout(Val a, double rate, Rng& rng);

    const Tensor& value(Val v) const { return nodes_[v.i].val; }
    const Tensor& grad(Val v) const { return nodes_[v.i].grad; }

    // Seeds d(loss)/d(loss) = 1 and sweeps the tape in reverse.
    void backward(Val loss);

    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        Tensor val;
        Tensor grad;
        std::function<void()> back;  // empty for leaves
    };

    Val push(Tensor val, std::function<void()> back);
    Tensor& g(Val v) { return nodes_[v.i].grad; }
    const Tensor& t(Val v) const { return nodes_[v.i].val; }

    std::vector<Node> nodes_;
};

}  // namespace lexinfo
