#pragma once

#include <cstdint>
#include <vector>

#include "ccrig/core/mat.hpp"

namespace ccrig {

enum class Act : uint8_t { Relu, Tanh, Sigmoid, Identity };

// Handle to a node on a Tape.
struct Var {
    int32_t id = -1;
    bool valid() const { return id >= 0; }
};

// Define-by-run reverse-mode tape over Mat values. The graph is rebuilt for
// every forward pass; backward walks the records once in reverse. Leaf and
// constant nodes alias caller-owned storage, which must outlive the pass.
// A tape is single-threaded; use one tape per thread.
class Tape {
public:
    // Inputs. Both reject non-finite values; only leaves receive gradients.
    Var leaf(const Mat& m);
    Var constant(const Mat& m);

    // y = x·Wᵀ + b with x:[B×I], w:[O×I], b:[1×O]
    Var affine(Var x, Var w, Var b);
    Var activation(Var x, Act kind);
    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var mul(Var a, Var b);  // elementwise
    Var scale(Var x, float c);
    Var add_scalar(Var x, float c);
    Var exp(Var x);
    Var clamp(Var x, float lo, float hi);  // gradient zero where clamped
    Var concat_cols(Var a, Var b);
    Var slice_cols(Var x, int c0, int c1);
    Var sum(Var x);  // 1×1; f64 accumulation tracked through scalar ops
    // z = mu + exp(logvar/2)⊙noise; gradient flows to mu and logvar only
    Var reparameterize(Var mu, Var logvar, const Mat& noise);

    // Seeds d(loss)/d(loss)=1 and accumulates gradients into every reachable
    // differentiable node. loss must be 1×1.
    void backward(Var loss);

    const Mat& value(Var v) const;
    double scalar_value(Var v) const;  // f64 value when tracked, else f32
    // Gradient of a node after backward; zeros if the node was unreachable.
    const Mat& grad(Var v);
    // Summed gradient over all leaf nodes bound to `storage` (zeros if none).
    Mat grad_for(const Mat* storage) const;

    void reset();
    size_t num_nodes() const { return nodes_.size(); }

private:
    enum class OpKind : uint8_t {
        Leaf, Const, Affine, Activation, Add, Sub, Mul, Scale, AddScalar,
        Exp, Clamp, ConcatCols, SliceCols, Sum, Reparam,
    };

    struct Node {
        OpKind kind;
        Act act = Act::Identity;
        int32_t in0 = -1, in1 = -1, in2 = -1;
        const Mat* src = nullptr;  // leaf/const storage
        Mat value;
        Mat grad;                 // allocated on first touch
        Mat aux0, aux1;           // reparam: noise, std
        float f0 = 0.0f, f1 = 0.0f;
        int32_t c0 = 0, c1 = 0;
        double dval = 0.0;        // f64 scalar value
        bool has_dval = false;
        bool requires_grad = false;
        bool grad_alloc = false;
    };

    const Mat& val(int32_t id) const { return nodes_[id].src ? *nodes_[id].src : nodes_[id].value; }
    Mat& ensure_grad(int32_t id);
    bool rg(Var v) const { return nodes_[v.id].requires_grad; }
    Var push(Node&& n);
    void check(Var v) const;
    void backward_node(int32_t id);

    std::vector<Node> nodes_;
};

}  // namespace ccrig
