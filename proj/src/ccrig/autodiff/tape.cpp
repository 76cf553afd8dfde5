#include "ccrig/autodiff/tape.hpp"

#include <cstring>
#include <string>

#include "ccrig/core/errors.hpp"
#include "ccrig/kernels/kernels.hpp"

namespace ccrig {

namespace {
std::string shape_str(const Mat& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}
}  // namespace

void Tape::check(Var v) const {
    if (!v.valid() || static_cast<size_t>(v.id) >= nodes_.size())
        throw ContractError("tape: invalid Var handle");
}

Var Tape::push(Node&& n) {
    nodes_.push_back(std::move(n));
    return Var{static_cast<int32_t>(nodes_.size() - 1)};
}

Var Tape::leaf(const Mat& m) {
    if (!all_finite(m)) throw ValueError("tape.leaf: non-finite input");
    Node n;
    n.kind = OpKind::Leaf;
    n.src = &m;
    n.requires_grad = true;
    return push(std::move(n));
}

Var Tape::constant(const Mat& m) {
    if (!all_finite(m)) throw ValueError("tape.constant: non-finite input");
    Node n;
    n.kind = OpKind::Const;
    n.src = &m;
    n.requires_grad = false;
    return push(std::move(n));
}

Var Tape::affine(Var x, Var w, Var b) {
    check(x);
    check(w);
    check(b);
    const Mat& xm = val(x.id);
    const Mat& wm = val(w.id);
    const Mat& bm = val(b.id);
    if (xm.cols() != wm.cols())
        throw DimensionError("affine: x is " + shape_str(xm) + " but w is " + shape_str(wm) +
                             " (inner dims " + std::to_string(xm.cols()) + " vs " +
                             std::to_string(wm.cols()) + ")");
    if (bm.rows() != 1 || bm.cols() != wm.rows())
        throw DimensionError("affine: bias is " + shape_str(bm) + ", expected 1x" +
                             std::to_string(wm.rows()));
    Node n;
    n.kind = OpKind::Affine;
    n.in0 = x.id;
    n.in1 = w.id;
    n.in2 = b.id;
    n.requires_grad = rg(x) || rg(w) || rg(b);
    n.value = Mat(xm.rows(), wm.rows());
    kern::ops().gemm_nt(xm.data(), wm.data(), n.value.data(), xm.rows(), xm.cols(), wm.rows(), false);
    for (int r = 0; r < n.value.rows(); ++r)
        kern::ops().add(n.value.row(r), bm.data(), n.value.row(r), bm.cols());
    return push(std::move(n));
}

Var Tape::activation(Var x, Act kind) {
    check(x);
    const Mat& xm = val(x.id);
    Node n;
    n.kind = OpKind::Activation;
    n.act = kind;
    n.in0 = x.id;
    n.requires_grad = rg(x);
    n.value = Mat(xm.rows(), xm.cols());
    switch (kind) {
        case Act::Relu: kern::ops().relu(xm.data(), n.value.data(), xm.size()); break;
        case Act::Tanh: kern::ops().tanh_fwd(xm.data(), n.value.data(), xm.size()); break;
        case Act::Sigmoid: kern::ops().sigmoid_fwd(xm.data(), n.value.data(), xm.size()); break;
        case Act::Identity: std::memcpy(n.value.data(), xm.data(), sizeof(float) * xm.size()); break;
    }
    return push(std::move(n));
}

namespace {
void require_same_shape(const Mat& a, const Mat& b, const char* op) {
    if (!a.same_shape(b))
        throw DimensionError(std::string(op) + ": shapes " + shape_str(a) + " vs " + shape_str(b));
}
}  // namespace

Var Tape::add(Var a, Var b) {
    check(a);
    check(b);
    const Mat& am = val(a.id);
    const Mat& bm = val(b.id);
    require_same_shape(am, bm, "add");
    Node n;
    n.kind = OpKind::Add;
    n.in0 = a.id;
    n.in1 = b.id;
    n.requires_grad = rg(a) || rg(b);
    n.value = Mat(am.rows(), am.cols());
    kern::ops().add(am.data(), bm.data(), n.value.data(), am.size());
    if (am.size() == 1 && nodes_[a.id].has_dval && nodes_[b.id].has_dval) {
        n.dval = nodes_[a.id].dval + nodes_[b.id].dval;
        n.has_dval = true;
    }
    return push(std::move(n));
}

Var Tape::sub(Var a, Var b) {
    check(a);
    check(b);
    const Mat& am = val(a.id);
    const Mat& bm = val(b.id);
    require_same_shape(am, bm, "sub");
    Node n;
    n.kind = OpKind::Sub;
    n.in0 = a.id;
    n.in1 = b.id;
    n.requires_grad = rg(a) || rg(b);
    n.value = Mat(am.rows(), am.cols());
    kern::ops().sub(am.data(), bm.data(), n.value.data(), am.size());
    if (am.size() == 1 && nodes_[a.id].has_dval && nodes_[b.id].has_dval) {
        n.dval = nodes_[a.id].dval - nodes_[b.id].dval;
        n.has_dval = true;
    }
    return push(std::move(n));
}

Var Tape::mul(Var a, Var b) {
    check(a);
    check(b);
    const Mat& am = val(a.id);
    const Mat& bm = val(b.id);
    require_same_shape(am, bm, "mul");
    Node n;
    n.kind = OpKind::Mul;
    n.in0 = a.id;
    n.in1 = b.id;
    n.requires_grad = rg(a) || rg(b);
    n.value = Mat(am.rows(), am.cols());
    kern::ops().mul(am.data(), bm.data(), n.value.data(), am.size());
    return push(std::move(n));
}

Var Tape::scale(Var x, float c) {
    check(x);
    const Mat& xm = val(x.id);
    Node n;
    n.kind = OpKind::Scale;
    n.in0 = x.id;
    n.f0 = c;
    n.requires_grad = rg(x);
    n.value = Mat(xm.rows(), xm.cols());
    kern::ops().scale(xm.data(), c, n.value.data(), xm.size());
    if (xm.size() == 1 && nodes_[x.id].has_dval) {
        n.dval = nodes_[x.id].dval * c;
        n.has_dval = true;
    }
    return push(std::move(n));
}

Var Tape::add_scalar(Var x, float c) {
    check(x);
    const Mat& xm = val(x.id);
    Node n;
    n.kind = OpKind::AddScalar;
    n.in0 = x.id;
    n.f0 = c;
    n.requires_grad = rg(x);
    n.value = Mat(xm.rows(), xm.cols());
    for (size_t i = 0; i < xm.size(); ++i) n.value[i] = xm[i] + c;
    if (xm.size() == 1 && nodes_[x.id].has_dval) {
        n.dval = nodes_[x.id].dval + c;
        n.has_dval = true;
    }
    return push(std::move(n));
}

Var Tape::exp(Var x) {
    check(x);
    const Mat& xm = val(x.id);
    Node n;
    n.kind = OpKind::Exp;
    n.in0 = x.id;
    n.requires_grad = rg(x);
    n.value = Mat(xm.rows(), xm.cols());
    kern::ops().exp_fwd(xm.data(), n.value.data(), xm.size());
    return push(std::move(n));
}

Var Tape::clamp(Var x, float lo, float hi) {
    check(x);
    const Mat& xm = val(x.id);
    Node n;
    n.kind = OpKind::Clamp;
    n.in0 = x.id;
    n.f0 = lo;
    n.f1 = hi;
    n.requires_grad = rg(x);
    n.value = Mat(xm.rows(), xm.cols());
    kern::ops().clamp_fwd(xm.data(), lo, hi, n.value.data(), xm.size());
    return push(std::move(n));
}

Var Tape::concat_cols(Var a, Var b) {
    check(a);
    check(b);
    const Mat& am = val(a.id);
    const Mat& bm = val(b.id);
    if (am.rows() != bm.rows())
        throw DimensionError("concat_cols: row counts " + std::to_string(am.rows()) + " vs " +
                             std::to_string(bm.rows()));
    Node n;
    n.kind = OpKind::ConcatCols;
    n.in0 = a.id;
    n.in1 = b.id;
    n.requires_grad = rg(a) || rg(b);
    n.value = Mat(am.rows(), am.cols() + bm.cols());
    for (int r = 0; r < am.rows(); ++r) {
        std::memcpy(n.value.row(r), am.row(r), sizeof(float) * am.cols());
        std::memcpy(n.value.row(r) + am.cols(), bm.row(r), sizeof(float) * bm.cols());
    }
    return push(std::move(n));
}

Var Tape::slice_cols(Var x, int c0, int c1) {
    check(x);
    const Mat& xm = val(x.id);
    if (c0 < 0 || c1 > xm.cols() || c0 >= c1)
        throw DimensionError("slice_cols: range [" + std::to_string(c0) + "," + std::to_string(c1) +
                             ") of " + shape_str(xm));
    Node n;
    n.kind = OpKind::SliceCols;
    n.in0 = x.id;
    n.c0 = c0;
    n.c1 = c1;
    n.requires_grad = rg(x);
    n.value = Mat(xm.rows(), c1 - c0);
    for (int r = 0; r < xm.rows(); ++r)
        std::memcpy(n.value.row(r), xm.row(r) + c0, sizeof(float) * (c1 - c0));
    return push(std::move(n));
}

Var Tape::sum(Var x) {
    check(x);
    const Mat& xm = val(x.id);
    Node n;
    n.kind = OpKind::Sum;
    n.in0 = x.id;
    n.requires_grad = rg(x);
    n.value = Mat(1, 1);
    n.dval = kern::ops().sum(xm.data(), xm.size());
    n.has_dval = true;
    n.value(0, 0) = static_cast<float>(n.dval);
    return push(std::move(n));
}

Var Tape::reparameterize(Var mu, Var logvar, const Mat& noise) {
    check(mu);
    check(logvar);
    const Mat& mm = val(mu.id);
    const Mat& lm = val(logvar.id);
    require_same_shape(mm, lm, "reparameterize");
    require_same_shape(mm, noise, "reparameterize(noise)");
    Node n;
    n.kind = OpKind::Reparam;
    n.in0 = mu.id;
    n.in1 = logvar.id;
    n.requires_grad = rg(mu) || rg(logvar);
    n.aux0 = noise;  // keep a copy: backward needs it, caller may reuse buffers
    n.aux1 = Mat(mm.rows(), mm.cols());
    kern::ops().scale(lm.data(), 0.5f, n.aux1.data(), lm.size());
    kern::ops().exp_fwd(n.aux1.data(), n.aux1.data(), lm.size());
    n.value = Mat(mm.rows(), mm.cols());
    kern::ops().mul(n.aux1.data(), noise.data(), n.value.data(), mm.size());
    kern::ops().add(n.value.data(), mm.data(), n.value.data(), mm.size());
    return push(std::move(n));
}

Mat& Tape::ensure_grad(int32_t id) {
    Node& n = nodes_[id];
    if (!n.grad_alloc) {
        const Mat& v = val(id);
        n.grad = Mat(v.rows(), v.cols());
        n.grad_alloc = true;
    }
    return n.grad;
}

void Tape::backward(Var loss) {
    check(loss);
    const Mat& lv = val(loss.id);
    if (lv.size() != 1) throw ContractError("backward: loss must be scalar (got " + shape_str(lv) + ")");
    ensure_grad(loss.id)(0, 0) = 1.0f;
    for (int32_t id = loss.id; id >= 0; --id) {
        const Node& n = nodes_[id];
        if (!n.requires_grad || !n.grad_alloc) continue;
        backward_node(id);
    }
}

void Tape::backward_node(int32_t id) {
    Node& n = nodes_[id];
    const Mat& dy = n.grad;
    const auto& K = kern::ops();
    auto flow = [&](int32_t in) { return in >= 0 && nodes_[in].requires_grad; };

    switch (n.kind) {
        case OpKind::Leaf:
        case OpKind::Const:
            break;
        case OpKind::Affine: {
            const Mat& x = val(n.in0);
            const Mat& w = val(n.in1);
            if (flow(n.in0)) {
                Mat& dx = ensure_grad(n.in0);
                K.gemm_nn(dy.data(), w.data(), dx.data(), dy.rows(), dy.cols(), w.cols(), true);
            }
            if (flow(n.in1)) {
                Mat& dw = ensure_grad(n.in1);
                K.gemm_tn(dy.data(), x.data(), dw.data(), dy.rows(), dy.cols(), x.cols(), true);
            }
            if (flow(n.in2)) {
                Mat& db = ensure_grad(n.in2);
                K.colsum_acc(dy.data(), db.data(), dy.rows(), dy.cols());
            }
            break;
        }
        case OpKind::Activation: {
            if (!flow(n.in0)) break;
            Mat& dx = ensure_grad(n.in0);
            switch (n.act) {
                case Act::Relu: K.relu_bwd(n.value.data(), dy.data(), dx.data(), dy.size()); break;
                case Act::Tanh: K.tanh_bwd(n.value.data(), dy.data(), dx.data(), dy.size()); break;
                case Act::Sigmoid: K.sigmoid_bwd(n.value.data(), dy.data(), dx.data(), dy.size()); break;
                case Act::Identity: K.axpy(1.0f, dy.data(), dx.data(), dy.size()); break;
            }
            break;
        }
        case OpKind::Add:
            if (flow(n.in0)) K.axpy(1.0f, dy.data(), ensure_grad(n.in0).data(), dy.size());
            if (flow(n.in1)) K.axpy(1.0f, dy.data(), ensure_grad(n.in1).data(), dy.size());
            break;
        case OpKind::Sub:
            if (flow(n.in0)) K.axpy(1.0f, dy.data(), ensure_grad(n.in0).data(), dy.size());
            if (flow(n.in1)) K.axpy(-1.0f, dy.data(), ensure_grad(n.in1).data(), dy.size());
            break;
        case OpKind::Mul:
            if (flow(n.in0)) K.mul_acc(dy.data(), val(n.in1).data(), ensure_grad(n.in0).data(), dy.size());
            if (flow(n.in1)) K.mul_acc(dy.data(), val(n.in0).data(), ensure_grad(n.in1).data(), dy.size());
            break;
        case OpKind::Scale:
            if (flow(n.in0)) K.axpy(n.f0, dy.data(), ensure_grad(n.in0).data(), dy.size());
            break;
        case OpKind::AddScalar:
            if (flow(n.in0)) K.axpy(1.0f, dy.data(), ensure_grad(n.in0).data(), dy.size());
            break;
        case OpKind::Exp:
            if (flow(n.in0)) K.mul_acc(dy.data(), n.value.data(), ensure_grad(n.in0).data(), dy.size());
            break;
        case OpKind::Clamp: {
            if (!flow(n.in0)) break;
            const Mat& x = val(n.in0);
            Mat& dx = ensure_grad(n.in0);
            for (size_t i = 0; i < dy.size(); ++i)
                if (x[i] > n.f0 && x[i] < n.f1) dx[i] += dy[i];
            break;
        }
        case OpKind::ConcatCols: {
            const Mat& a = val(n.in0);
            const Mat& b = val(n.in1);
            if (flow(n.in0)) {
                Mat& da = ensure_grad(n.in0);
                for (int r = 0; r < a.rows(); ++r)
                    K.add(da.row(r), dy.row(r), da.row(r), a.cols());
            }
            if (flow(n.in1)) {
                Mat& db = ensure_grad(n.in1);
                for (int r = 0; r < b.rows(); ++r)
                    K.add(db.row(r), dy.row(r) + a.cols(), db.row(r), b.cols());
            }
            break;
        }
        case OpKind::SliceCols: {
            if (!flow(n.in0)) break;
            Mat& dx = ensure_grad(n.in0);
            for (int r = 0; r < dy.rows(); ++r)
                K.add(dx.row(r) + n.c0, dy.row(r), dx.row(r) + n.c0, dy.cols());
            break;
        }
        case OpKind::Sum: {
            if (!flow(n.in0)) break;
            Mat& dx = ensure_grad(n.in0);
            float g = dy(0, 0);
            for (size_t i = 0; i < dx.size(); ++i) dx[i] += g;
            break;
        }
        case OpKind::Reparam: {
            if (flow(n.in0)) K.axpy(1.0f, dy.data(), ensure_grad(n.in0).data(), dy.size());
            if (flow(n.in1)) {
                // d z / d logvar = 0.5·noise·exp(logvar/2)
                Mat& dl = ensure_grad(n.in1);
                for (size_t i = 0; i < dy.size(); ++i)
                    dl[i] += 0.5f * dy[i] * n.aux0[i] * n.aux1[i];
            }
            break;
        }
    }
}

const Mat& Tape::value(Var v) const {
    check(v);
    return val(v.id);
}

double Tape::scalar_value(Var v) const {
    check(v);
    const Node& n = nodes_[v.id];
    if (n.has_dval) return n.dval;
    const Mat& m = val(v.id);
    if (m.size() != 1) throw ContractError("scalar_value: node is not 1x1");
    return m(0, 0);
}

const Mat& Tape::grad(Var v) {
    check(v);
    return ensure_grad(v.id);
}

Mat Tape::grad_for(const Mat* storage) const {
    Mat acc;
    for (const Node& n : nodes_) {
        if (n.kind != OpKind::Leaf || n.src != storage) continue;
        if (acc.empty()) acc = Mat(storage->rows(), storage->cols());
        if (n.grad_alloc) kern::ops().add(acc.data(), n.grad.data(), acc.data(), acc.size());
    }
    if (acc.empty()) acc = Mat(storage->rows(), storage->cols());
    return acc;
}

void Tape::reset() { nodes_.clear(); }

}  // namespace ccrig
