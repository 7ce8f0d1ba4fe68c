#include "kgapp/nn/recurrent.hpp"

#include <cmath>

#include "kgapp/error.hpp"
#include "kgapp/skipgram.hpp"

namespace kgapp::nn {

namespace {

// pre[r] = b[r] + W[r,:] x + U[r,:] h
void Affine(std::span<const double> x, std::span<const double> h, const Tensor& w, const Tensor& u,
            const Tensor& b, std::span<double> pre) {
  const std::size_t rows = b.size(), in = x.size(), hid = h.size();
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = b[r];
    const double* wr = w.data() + r * in;
    for (std::size_t c = 0; c < in; ++c) acc += wr[c] * x[c];
    const double* ur = u.data() + r * hid;
    for (std::size_t k = 0; k < hid; ++k) acc += ur[k] * h[k];
    pre[r] = acc;
  }
}

void CheckStepShapes(std::size_t gates, std::span<const double> x, std::span<const double> h,
                     const Tensor& w, const Tensor& u, const Tensor& b) {
  const std::size_t hid = h.size();
  ExpectShape(w.shape(), {gates * hid, x.size()}, "recurrent input weight");
  ExpectShape(u.shape(), {gates * hid, hid}, "recurrent weight");
  ExpectShape(b.shape(), {gates * hid}, "recurrent bias");
}

}  // namespace

void RnnStep(std::span<const double> x, std::span<const double> h, const Tensor& w,
             const Tensor& u, const Tensor& b, std::span<double> h_out) {
  CheckStepShapes(1, x, h, w, u, b);
  if (h_out.size() != h.size()) throw ShapeError("rnn_step output size mismatch");
  std::vector<double> pre(h.size());
  Affine(x, h, w, u, b, pre);
  for (std::size_t k = 0; k < h.size(); ++k) h_out[k] = std::tanh(pre[k]);
}

void LstmStep(std::span<const double> x, std::span<const double> h, std::span<const double> c,
              const Tensor& w, const Tensor& u, const Tensor& b, std::span<double> h_out,
              std::span<double> c_out, LstmGates* gates) {
  CheckStepShapes(4, x, h, w, u, b);
  const std::size_t hid = h.size();
  if (c.size() != hid || h_out.size() != hid || c_out.size() != hid) {
    throw ShapeError("lstm_step state size mismatch");
  }
  std::vector<double> pre(4 * hid);
  Affine(x, h, w, u, b, pre);
  LstmGates local;
  LstmGates& g = gates ? *gates : local;
  g.i.resize(hid);
  g.f.resize(hid);
  g.g.resize(hid);
  g.o.resize(hid);
  for (std::size_t k = 0; k < hid; ++k) {
    g.i[k] = Sigmoid(pre[k]);
    g.f[k] = Sigmoid(pre[hid + k]);
    g.g[k] = std::tanh(pre[2 * hid + k]);
    g.o[k] = Sigmoid(pre[3 * hid + k]);
    c_out[k] = g.f[k] * c[k] + g.i[k] * g.g[k];
    h_out[k] = g.o[k] * std::tanh(c_out[k]);
  }
}

// ------------------------------------------------------------- SimpleRnn

SimpleRnn::SimpleRnn(std::size_t input, std::size_t hidden, Rng& rng)
    : input_(input),
      hidden_(hidden),
      w_("w", Tensor({hidden, input})),
      u_("u", Tensor({hidden, hidden})),
      b_("b", Tensor({hidden})) {
  GlorotUniform(w_.value, input, hidden, rng);
  GlorotUniform(u_.value, hidden, hidden, rng);
}

Tensor SimpleRnn::Forward(const Tensor& input, Mode) {
  ExpectRank(input, 3, "rnn input");
  ExpectShape({input.dim(2)}, {input_}, "rnn input features");
  x_ = input;
  const std::size_t batch = input.dim(0), len = input.dim(1);
  h_ = Tensor({batch, len, hidden_});
  std::vector<double> zero(hidden_, 0.0);
  for (std::size_t bi = 0; bi < batch; ++bi) {
    for (std::size_t t = 0; t < len; ++t) {
      std::span<const double> prev = t == 0 ? std::span<const double>(zero)
                                            : std::span<const double>(&h_.at(bi, t - 1, 0), hidden_);
      RnnStep(std::span<const double>(&input.at(bi, t, 0), input_), prev, w_.value, u_.value,
              b_.value, std::span<double>(&h_.at(bi, t, 0), hidden_));
    }
  }
  ExpectFinite(h_, "rnn");
  return h_;
}

Tensor SimpleRnn::Backward(const Tensor& grad_output) {
  const std::size_t batch = x_.dim(0), len = x_.dim(1);
  ExpectShape(grad_output.shape(), {batch, len, hidden_}, "rnn grad_output");
  Tensor grad_input(x_.shape());
  std::vector<double> dh(hidden_), dpre(hidden_);
  for (std::size_t bi = 0; bi < batch; ++bi) {
    std::fill(dh.begin(), dh.end(), 0.0);
    for (std::size_t t = len; t-- > 0;) {
      for (std::size_t k = 0; k < hidden_; ++k) {
        const double h = h_.at(bi, t, k);
        dpre[k] = (dh[k] + grad_output.at(bi, t, k)) * (1.0 - h * h);
      }
      const double* x = &x_.at(bi, t, 0);
      double* gx = &grad_input.at(bi, t, 0);
      std::fill(dh.begin(), dh.end(), 0.0);
      for (std::size_t r = 0; r < hidden_; ++r) {
        const double d = dpre[r];
        b_.grad[r] += d;
        double* gw = w_.grad.data() + r * input_;
        const double* w = w_.value.data() + r * input_;
        for (std::size_t c = 0; c < input_; ++c) {
          gw[c] += d * x[c];
          gx[c] += d * w[c];
        }
        if (t > 0) {
          double* gu = u_.grad.data() + r * hidden_;
          const double* u = u_.value.data() + r * hidden_;
          const double* hp = &h_.at(bi, t - 1, 0);
          for (std::size_t k = 0; k < hidden_; ++k) {
            gu[k] += d * hp[k];
            dh[k] += d * u[k];
          }
        }
      }
    }
  }
  return grad_input;
}

// ------------------------------------------------------------------ Lstm

Lstm::Lstm(std::size_t input, std::size_t hidden, Rng& rng, bool reverse)
    : input_(input),
      hidden_(hidden),
      reverse_(reverse),
      w_("w", Tensor({4 * hidden, input})),
      u_("u", Tensor({4 * hidden, hidden})),
      b_("b", Tensor({4 * hidden})) {
  GlorotUniform(w_.value, input, 4 * hidden, rng);
  GlorotUniform(u_.value, hidden, 4 * hidden, rng);
  // Forget-gate bias starts at 1.
  for (std::size_t k = 0; k < hidden; ++k) b_.value[hidden + k] = 1.0;
}

Tensor Lstm::Forward(const Tensor& input, Mode) {
  ExpectRank(input, 3, "lstm input");
  ExpectShape({input.dim(2)}, {input_}, "lstm input features");
  x_ = input;
  const std::size_t batch = input.dim(0), len = input.dim(1), hid = hidden_;
  gates_.assign(batch * len * 4 * hid, 0.0);
  cells_.assign(batch * len * hid, 0.0);
  hiddens_.assign(batch * len * hid, 0.0);
  Tensor out({batch, len, hid});
  std::vector<double> zero(hid, 0.0);
  LstmGates g;
  for (std::size_t bi = 0; bi < batch; ++bi) {
    for (std::size_t s = 0; s < len; ++s) {
      const std::size_t t = reverse_ ? len - 1 - s : s;
      const std::size_t slot = bi * len + s;
      std::span<const double> h_prev = s == 0 ? std::span<const double>(zero)
                                              : std::span<const double>(&hiddens_[(slot - 1) * hid], hid);
      std::span<const double> c_prev = s == 0 ? std::span<const double>(zero)
                                              : std::span<const double>(&cells_[(slot - 1) * hid], hid);
      LstmStep(std::span<const double>(&input.at(bi, t, 0), input_), h_prev, c_prev, w_.value,
               u_.value, b_.value, std::span<double>(&hiddens_[slot * hid], hid),
               std::span<double>(&cells_[slot * hid], hid), &g);
      double* gs = &gates_[slot * 4 * hid];
      for (std::size_t k = 0; k < hid; ++k) {
        gs[k] = g.i[k];
        gs[hid + k] = g.f[k];
        gs[2 * hid + k] = g.g[k];
        gs[3 * hid + k] = g.o[k];
        out.at(bi, t, k) = hiddens_[slot * hid + k];
      }
    }
  }
  ExpectFinite(out, "lstm");
  return out;
}

Tensor Lstm::Backward(const Tensor& grad_output) {
  const std::size_t batch = x_.dim(0), len = x_.dim(1), hid = hidden_;
  ExpectShape(grad_output.shape(), {batch, len, hid}, "lstm grad_output");
  Tensor grad_input(x_.shape());
  std::vector<double> dh(hid), dc(hid), dpre(4 * hid);
  for (std::size_t bi = 0; bi < batch; ++bi) {
    std::fill(dh.begin(), dh.end(), 0.0);
    std::fill(dc.begin(), dc.end(), 0.0);
    for (std::size_t s = len; s-- > 0;) {
      const std::size_t t = reverse_ ? len - 1 - s : s;
      const std::size_t slot = bi * len + s;
      const double* gs = &gates_[slot * 4 * hid];
      const double* c = &cells_[slot * hid];
      for (std::size_t k = 0; k < hid; ++k) {
        const double i = gs[k], f = gs[hid + k], g = gs[2 * hid + k], o = gs[3 * hid + k];
        const double c_prev = s == 0 ? 0.0 : cells_[(slot - 1) * hid + k];
        const double tc = std::tanh(c[k]);
        const double dht = dh[k] + grad_output.at(bi, t, k);
        const double dct = dc[k] + dht * o * (1.0 - tc * tc);
        dpre[k] = dct * g * i * (1.0 - i);
        dpre[hid + k] = dct * c_prev * f * (1.0 - f);
        dpre[2 * hid + k] = dct * i * (1.0 - g * g);
        dpre[3 * hid + k] = dht * tc * o * (1.0 - o);
        dc[k] = dct * f;
      }
      const double* x = &x_.at(bi, t, 0);
      double* gx = &grad_input.at(bi, t, 0);
      const double* h_prev = s == 0 ? nullptr : &hiddens_[(slot - 1) * hid];
      std::fill(dh.begin(), dh.end(), 0.0);
      for (std::size_t r = 0; r < 4 * hid; ++r) {
        const double d = dpre[r];
        if (d == 0.0) continue;
        b_.grad[r] += d;
        double* gw = w_.grad.data() + r * input_;
        const double* w = w_.value.data() + r * input_;
        for (std::size_t cc = 0; cc < input_; ++cc) {
          gw[cc] += d * x[cc];
          gx[cc] += d * w[cc];
        }
        if (h_prev != nullptr) {
          double* gu = u_.grad.data() + r * hid;
          const double* u = u_.value.data() + r * hid;
          for (std::size_t k = 0; k < hid; ++k) {
            gu[k] += d * h_prev[k];
            dh[k] += d * u[k];
          }
        }
      }
    }
  }
  return grad_input;
}

// ---------------------------------------------------------------- BiLstm

BiLstm::BiLstm(std::size_t input, std::size_t hidden, Rng& rng)
    : hidden_(hidden), fwd_(input, hidden, rng, false), bwd_(input, hidden, rng, true) {}

std::vector<Parameter*> BiLstm::Parameters() {
  auto p = fwd_.Parameters();
  for (auto* q : bwd_.Parameters()) p.push_back(q);
  return p;
}

Tensor BiLstm::Forward(const Tensor& input, Mode mode) {
  Tensor f = fwd_.Forward(input, mode);
  Tensor b = bwd_.Forward(input, mode);
  const std::size_t batch = input.dim(0), len = input.dim(1);
  Tensor out({batch, len, 2 * hidden_});
  for (std::size_t bi = 0; bi < batch; ++bi) {
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t k = 0; k < hidden_; ++k) {
        out.at(bi, t, k) = f.at(bi, t, k);
        out.at(bi, t, hidden_ + k) = b.at(bi, t, k);
      }
    }
  }
  return out;
}

Tensor BiLstm::Backward(const Tensor& grad_output) {
  if (grad_output.rank() != 3 || grad_output.dim(2) != 2 * hidden_) {
    throw ShapeError("bilstm grad_output: expected trailing dimension " + std::to_string(2 * hidden_) +
                     ", got shape " + ShapeToString(grad_output.shape()));
  }
  const std::size_t batch = grad_output.dim(0), len = grad_output.dim(1);
  Tensor gf({batch, len, hidden_}), gb({batch, len, hidden_});
  for (std::size_t bi = 0; bi < batch; ++bi) {
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t k = 0; k < hidden_; ++k) {
        gf.at(bi, t, k) = grad_output.at(bi, t, k);
        gb.at(bi, t, k) = grad_output.at(bi, t, hidden_ + k);
      }
    }
  }
  Tensor dx = fwd_.Backward(gf);
  Tensor dxb = bwd_.Backward(gb);
  for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += dxb[i];
  return dx;
}

}  // namespace kgapp::nn
