#include "lexinfo/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace lexinfo {

Val Graph::push(Tensor val, std::function<void()> back) {
    Node n;
    n.grad = Tensor::zeros(val.shape);
    n.val = std::move(val);
    n.back = std::move(back);
    nodes_.push_back(std::move(n));
    return Val{static_cast<int>(nodes_.size() - 1)};
}

Val Graph::leaf(Tensor t) { return push(std::move(t), {}); }

Val Graph::matmul(Val a, Val b) {
    const Tensor& A = t(a);
    const Tensor& B = t(b);
    assert(A.rank() == 2 && B.rank() == 2 && A.cols() == B.rows());
    const std::size_t m = A.rows(), k = A.cols(), n = B.cols();
    Tensor C = Tensor::zeros({m, n});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = A.v[i * k + p];
            for (std::size_t j = 0; j < n; ++j) C.v[i * n + j] += aip * B.v[p * n + j];
        }
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, b, out, m, k, n] {
        const Tensor& G = g(out);
        const Tensor& A2 = t(a);
        const Tensor& B2 = t(b);
        Tensor& dA = g(a);
        Tensor& dB = g(b);
        // dA += G B^T ; dB += A^T G
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double gij = G.v[i * n + j];
                for (std::size_t p = 0; p < k; ++p) {
                    dA.v[i * k + p] += gij * B2.v[p * n + j];
                    dB.v[p * n + j] += A2.v[i * k + p] * gij;
                }
            }
    };
    return out;
}

Val Graph::matmul_nt(Val a, Val b) {
    const Tensor& A = t(a);
    const Tensor& B = t(b);
    assert(A.rank() == 2 && B.rank() == 2 && A.cols() == B.cols());
    const std::size_t m = A.rows(), k = A.cols(), n = B.rows();
    Tensor C = Tensor::zeros({m, n});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t p = 0; p < k; ++p) s += A.v[i * k + p] * B.v[j * k + p];
            C.v[i * n + j] = s;
        }
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, b, out, m, k, n] {
        const Tensor& G = g(out);
        const Tensor& A2 = t(a);
        const Tensor& B2 = t(b);
        Tensor& dA = g(a);
        Tensor& dB = g(b);
        // C = A B^T: dA += G B ; dB += G^T A
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double gij = G.v[i * n + j];
                for (std::size_t p = 0; p < k; ++p) {
                    dA.v[i * k + p] += gij * B2.v[j * k + p];
                    dB.v[j * k + p] += gij * A2.v[i * k + p];
                }
            }
    };
    return out;
}

Val Graph::matvec(Val m, Val x) {
    const Tensor& M = t(m);
    const Tensor& X = t(x);
    assert(M.rank() == 2 && X.rank() == 1 && M.cols() == X.size());
    const std::size_t r = M.rows(), c = M.cols();
    Tensor y = Tensor::zeros({r});
    for (std::size_t i = 0; i < r; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c; ++j) s += M.v[i * c + j] * X.v[j];
        y.v[i] = s;
    }
    Val out = push(std::move(y), {});
    nodes_.back().back = [this, m, x, out, r, c] {
        const Tensor& G = g(out);
        const Tensor& M2 = t(m);
        const Tensor& X2 = t(x);
        Tensor& dM = g(m);
        Tensor& dX = g(x);
        for (std::size_t i = 0; i < r; ++i) {
            const double gi = G.v[i];
            for (std::size_t j = 0; j < c; ++j) {
                dM.v[i * c + j] += gi * X2.v[j];
                dX.v[j] += gi * M2.v[i * c + j];
            }
        }
    };
    return out;
}

Val Graph::add(Val a, Val b) {
    const Tensor& A = t(a);
    const Tensor& B = t(b);
    assert(A.same_shape(B));
    Tensor C = A;
    for (std::size_t i = 0; i < C.size(); ++i) C.v[i] += B.v[i];
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, b, out] {
        const Tensor& G = g(out);
        Tensor& dA = g(a);
        Tensor& dB = g(b);
        for (std::size_t i = 0; i < G.size(); ++i) {
            dA.v[i] += G.v[i];
            dB.v[i] += G.v[i];
        }
    };
    return out;
}

Val Graph::mul(Val a, Val b) {
    const Tensor& A = t(a);
    const Tensor& B = t(b);
    assert(A.same_shape(B));
    Tensor C = A;
    for (std::size_t i = 0; i < C.size(); ++i) C.v[i] *= B.v[i];
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, b, out] {
        const Tensor& G = g(out);
        const Tensor& A2 = t(a);
        const Tensor& B2 = t(b);
        Tensor& dA = g(a);
        Tensor& dB = g(b);
        for (std::size_t i = 0; i < G.size(); ++i) {
            dA.v[i] += G.v[i] * B2.v[i];
            dB.v[i] += G.v[i] * A2.v[i];
        }
    };
    return out;
}

Val Graph::scale(Val a, double c) {
    Tensor C = t(a);
    for (double& x : C.v) x *= c;
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, out, c] {
        const Tensor& G = g(out);
        Tensor& dA = g(a);
        for (std::size_t i = 0; i < G.size(); ++i) dA.v[i] += c * G.v[i];
    };
    return out;
}

Val Graph::add_rowvec(Val m, Val b) {
    const Tensor& M = t(m);
    const Tensor& B = t(b);
    assert(M.rank() == 2 && B.rank() == 1 && M.cols() == B.size());
    Tensor C = M;
    const std::size_t r = M.rows(), c = M.cols();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) C.v[i * c + j] += B.v[j];
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, m, b, out, r, c] {
        const Tensor& G = g(out);
        Tensor& dM = g(m);
        Tensor& dB = g(b);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                dM.v[i * c + j] += G.v[i * c + j];
                dB.v[j] += G.v[i * c + j];
            }
    };
    return out;
}

Val Graph::sigmoid(Val a) {
    Tensor C = t(a);
    for (double& x : C.v) x = 1.0 / (1.0 + std::exp(-x));
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, out] {
        const Tensor& G = g(out);
        const Tensor& Y = t(out);
        Tensor& dA = g(a);
        for (std::size_t i = 0; i < G.size(); ++i) dA.v[i] += G.v[i] * Y.v[i] * (1.0 - Y.v[i]);
    };
    return out;
}

Val Graph::tanh_op(Val a) {
    Tensor C = t(a);
    for (double& x : C.v) x = std::tanh(x);
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, out] {
        const Tensor& G = g(out);
        const Tensor& Y = t(out);
        Tensor& dA = g(a);
        for (std::size_t i = 0; i < G.size(); ++i) dA.v[i] += G.v[i] * (1.0 - Y.v[i] * Y.v[i]);
    };
    return out;
}

Val Graph::relu(Val a) {
    Tensor C = t(a);
    for (double& x : C.v) x = x > 0.0 ? x : 0.0;
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, out] {
        const Tensor& G = g(out);
        const Tensor& X = t(a);
        Tensor& dA = g(a);
        for (std::size_t i = 0; i < G.size(); ++i)
            if (X.v[i] > 0.0) dA.v[i] += G.v[i];
    };
    return out;
}

Val Graph::slice(Val a, std::size_t offset, std::size_t len) {
    const Tensor& A = t(a);
    assert(A.rank() == 1 && offset + len <= A.size());
    Tensor C = Tensor::zeros({len});
    std::copy(A.v.begin() + offset, A.v.begin() + offset + len, C.v.begin());
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, out, offset, len] {
        const Tensor& G = g(out);
        Tensor& dA = g(a);
        for (std::size_t i = 0; i < len; ++i) dA.v[offset + i] += G.v[i];
    };
    return out;
}

Val Graph::row(Val m, std::size_t r) {
    const Tensor& M = t(m);
    assert(M.rank() == 2 && r < M.rows());
    const std::size_t c = M.cols();
    Tensor C = Tensor::zeros({c});
    std::copy(M.v.begin() + r * c, M.v.begin() + (r + 1) * c, C.v.begin());
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, m, out, r, c] {
        const Tensor& G = g(out);
        Tensor& dM = g(m);
        for (std::size_t j = 0; j < c; ++j) dM.v[r * c + j] += G.v[j];
    };
    return out;
}

Val Graph::embed_row(Val table, std::size_t id) { return row(table, id); }

Val Graph::embed_rows(Val table, const std::vector<int>& ids) {
    const Tensor& T = t(table);
    assert(T.rank() == 2);
    const std::size_t d = T.cols();
    Tensor C = Tensor::zeros({ids.size(), d});
    for (std::size_t i = 0; i < ids.size(); ++i) {
        assert(ids[i] >= 0 && static_cast<std::size_t>(ids[i]) < T.rows());
        std::copy(T.v.begin() + ids[i] * d, T.v.begin() + (ids[i] + 1) * d, C.v.begin() + i * d);
    }
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, table, out, ids, d] {
        const Tensor& G = g(out);
        Tensor& dT = g(table);
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) dT.v[ids[i] * d + j] += G.v[i * d + j];
    };
    return out;
}

Val Graph::concat_cols(const std::vector<Val>& parts) {
    assert(!parts.empty());
    const std::size_t r = t(parts[0]).rows();
    std::size_t total = 0;
    for (Val p : parts) {
        assert(t(p).rank() == 2 && t(p).rows() == r);
        total += t(p).cols();
    }
    Tensor C = Tensor::zeros({r, total});
    std::size_t off = 0;
    for (Val p : parts) {
        const Tensor& P = t(p);
        for (std::size_t i = 0; i < r; ++i)
            std::copy(P.v.begin() + i * P.cols(), P.v.begin() + (i + 1) * P.cols(),
                      C.v.begin() + i * total + off);
        off += P.cols();
    }
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, parts, out, r, total] {
        const Tensor& G = g(out);
        std::size_t off2 = 0;
        for (Val p : parts) {
            Tensor& dP = g(p);
            const std::size_t c = dP.cols();
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) dP.v[i * c + j] += G.v[i * total + off2 + j];
            off2 += c;
        }
    };
    return out;
}

Val Graph::row_softmax(Val m) {
    const Tensor& M = t(m);
    assert(M.rank() == 2);
    const std::size_t r = M.rows(), c = M.cols();
    Tensor P = M;
    for (std::size_t i = 0; i < r; ++i) {
        double mx = P.v[i * c];
        for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, P.v[i * c + j]);
        double sum = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            P.v[i * c + j] = std::exp(P.v[i * c + j] - mx);
            sum += P.v[i * c + j];
        }
        for (std::size_t j = 0; j < c; ++j) P.v[i * c + j] /= sum;
    }
    Val out = push(std::move(P), {});
    nodes_.back().back = [this, m, out, r, c] {
        const Tensor& G = g(out);
        const Tensor& P2 = t(out);
        Tensor& dM = g(m);
        for (std::size_t i = 0; i < r; ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < c; ++j) dot += G.v[i * c + j] * P2.v[i * c + j];
            for (std::size_t j = 0; j < c; ++j)
                dM.v[i * c + j] += P2.v[i * c + j] * (G.v[i * c + j] - dot);
        }
    };
    return out;
}

Val Graph::layer_norm(Val x, Val gamma, Val beta, double eps) {
    const Tensor& X = t(x);
    assert(X.rank() == 2);
    const std::size_t r = X.rows(), c = X.cols();
    assert(t(gamma).size() == c && t(beta).size() == c);
    Tensor Y = Tensor::zeros({r, c});
    std::vector<double> inv_std(r);
    Tensor Xhat = Tensor::zeros({r, c});
    const Tensor& Gm = t(gamma);
    const Tensor& Bt = t(beta);
    for (std::size_t i = 0; i < r; ++i) {
        double mean = 0.0;
        for (std::size_t j = 0; j < c; ++j) mean += X.v[i * c + j];
        mean /= static_cast<double>(c);
        double var = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            const double d = X.v[i * c + j] - mean;
            var += d * d;
        }
        var /= static_cast<double>(c);
        const double inv = 1.0 / std::sqrt(var + eps);
        inv_std[i] = inv;
        for (std::size_t j = 0; j < c; ++j) {
            const double xh = (X.v[i * c + j] - mean) * inv;
            Xhat.v[i * c + j] = xh;
            Y.v[i * c + j] = Gm.v[j] * xh + Bt.v[j];
        }
    }
    Val out = push(std::move(Y), {});
    nodes_.back().back = [this, x, gamma, beta, out, r, c, inv_std, Xhat] {
        const Tensor& G = g(out);
        const Tensor& Gm2 = t(gamma);
        Tensor& dX = g(x);
        Tensor& dGm = g(gamma);
        Tensor& dBt = g(beta);
        for (std::size_t i = 0; i < r; ++i) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t j = 0; j < c; ++j) {
                const double dy = G.v[i * c + j] * Gm2.v[j];
                s1 += dy;
                s2 += dy * Xhat.v[i * c + j];
            }
            s1 /= static_cast<double>(c);
            s2 /= static_cast<double>(c);
            for (std::size_t j = 0; j < c; ++j) {
                const double dy = G.v[i * c + j] * Gm2.v[j];
                dX.v[i * c + j] += inv_std[i] * (dy - s1 - Xhat.v[i * c + j] * s2);
                dGm.v[j] += G.v[i * c + j] * Xhat.v[i * c + j];
                dBt.v[j] += G.v[i * c + j];
            }
        }
    };
    return out;
}

Val Graph::log_softmax(Val z) {
    const Tensor& Z = t(z);
    assert(Z.rank() == 1);
    const std::size_t n = Z.size();
    double mx = Z.v[0];
    for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, Z.v[i]);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::exp(Z.v[i] - mx);
    const double lse = mx + std::log(sum);
    Tensor L = Tensor::zeros({n});
    for (std::size_t i = 0; i < n; ++i) L.v[i] = Z.v[i] - lse;
    Val out = push(std::move(L), {});
    nodes_.back().back = [this, z, out, n] {
        const Tensor& G = g(out);
        const Tensor& L2 = t(out);
        Tensor& dZ = g(z);
        double gsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) gsum += G.v[i];
        for (std::size_t i = 0; i < n; ++i) dZ.v[i] += G.v[i] - std::exp(L2.v[i]) * gsum;
    };
    return out;
}

Val Graph::nll(Val log_probs, std::size_t target) {
    const Tensor& L = t(log_probs);
    assert(L.rank() == 1 && target < L.size());
    Val out = push(Tensor::scalar(-L.v[target]), {});
    nodes_.back().back = [this, log_probs, out, target] {
        g(log_probs).v[target] -= g(out).v[0];
    };
    return out;
}

Val Graph::sum_scalars(const std::vector<Val>& xs) {
    assert(!xs.empty());
    double s = 0.0;
    for (Val x : xs) {
        assert(t(x).size() == 1);
        s += t(x).v[0];
    }
    Val out = push(Tensor::scalar(s), {});
    nodes_.back().back = [this, xs, out] {
        const double go = g(out).v[0];
        for (Val x : xs) g(x).v[0] += go;
    };
    return out;
}

Val Graph::dropout(Val a, double rate, Rng& rng) {
    assert(rate >= 0.0 && rate < 1.0);
    const Tensor& A = t(a);
    Tensor mask = Tensor::zeros(A.shape);
    const double keep = 1.0 - rate;
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask.v[i] = rng.uniform() < rate ? 0.0 : 1.0 / keep;
    Tensor C = A;
    for (std::size_t i = 0; i < C.size(); ++i) C.v[i] *= mask.v[i];
    Val out = push(std::move(C), {});
    nodes_.back().back = [this, a, out, mask] {
        const Tensor& G = g(out);
        Tensor& dA = g(a);
        for (std::size_t i = 0; i < G.size(); ++i) dA.v[i] += G.v[i] * mask.v[i];
    };
    return out;
}

void Graph::backward(Val loss) {
    assert(loss.valid() && nodes_[loss.i].val.size() == 1);
    g(loss).v[0] = 1.0;
    for (int i = loss.i; i >= 0; --i)
        if (nodes_[i].back) nodes_[i].back();
}

}  // namespace lexinfo
