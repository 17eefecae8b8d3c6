#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repsel/common.hpp"

namespace repsel::nn {

/// Batch of real sequences, shape (n, length, channels), channel-minor.
struct Sequence {
  int n = 0;
  int length = 0;
  int channels = 0;
  std::vector<double> data;

  Sequence() = default;
  Sequence(int n_, int len, int ch)
      : n(n_), length(len), channels(ch),
        data(static_cast<size_t>(n_) * len * ch, 0.0) {}

  double& at(int i, int t, int c) {
    return data[(static_cast<size_t>(i) * length + t) * channels + c];
  }
  double at(int i, int t, int c) const {
    return data[(static_cast<size_t>(i) * length + t) * channels + c];
  }
  size_t size() const { return data.size(); }
};

struct LayerSpec {
  enum class Kind { conv1d, maxpool1d, bilstm, dense, upsample1d, deconv1d };
  Kind kind;
  int filters = 0;       // conv1d / deconv1d output channels
  int kernel = 0;        // conv1d / deconv1d
  int stride = 1;        // conv1d, fixed at 1
  bool same_padding = true;
  int pool = 0;          // maxpool1d, ceil mode
  int units = 0;         // bilstm (per direction) / dense
  bool return_sequences = true;  // bilstm
  bool per_timestep = true;      // dense applies per timestep
  int factor = 0;        // upsample1d repetition factor
  int crop_to = 0;       // upsample1d: truncate output to this length (0 = off)

  static LayerSpec conv1d(int filters, int kernel);
  static LayerSpec maxpool1d(int pool);
  static LayerSpec bilstm(int units);
  static LayerSpec dense(int units);
  static LayerSpec upsample1d(int factor, int crop_to = 0);
  static LayerSpec deconv1d(int filters, int kernel);
};

/// Per-layer static shape info derived from the input shape.
struct LayerShape {
  int in_len = 0, in_ch = 0, out_len = 0, out_ch = 0;
};

/// Fixed-architecture network: an ordered layer stack with an explicit
/// encoder/decoder boundary. Parameters are flat per-layer vectors.
struct Network {
  std::vector<LayerSpec> layers;
  std::vector<LayerShape> shapes;
  std::vector<std::vector<double>> params;
  int encoder_len = 0;  // layers [0, encoder_len) form the encoder
  int input_length = 0;
  int input_channels = 1;
  uint64_t seed = 0;

  int latent_length() const { return shapes[encoder_len - 1].out_len; }
  int latent_channels() const { return shapes[encoder_len - 1].out_ch; }
  size_t num_params() const;
};

/// Builds the autoencoder stack: conv -> maxpool(k) -> bilstm -> dense(1)
/// mirrored by dense(filters) -> upsample(k) -> deconv. The pooled length is
/// ceil(len/k); the decoder crops back to the input length after upsampling.
Network make_autoencoder(int input_length, int pool_k, uint64_t seed, int filters = 50,
                         int kernel = 10, int lstm_units = 50, int input_channels = 1);

/// Builds a network from explicit specs (first `encoder_len` layers encode).
Network make_network(std::vector<LayerSpec> specs, int encoder_len, int input_length,
                     int input_channels, uint64_t seed);

/// Activations and layer caches captured during forward for use by backward.
struct ForwardTrace {
  std::vector<Sequence> acts;                 // acts[0] = x, acts[i+1] = layer i out
  std::vector<std::vector<int>> pool_argmax;  // per layer
  std::vector<std::vector<double>> lstm_cache;
};

Sequence forward(const Network& net, const Sequence& x, ForwardTrace* trace = nullptr);
Sequence encode(const Network& net, const Sequence& x);
Sequence decode(const Network& net, const Sequence& latent);

struct Grads {
  std::vector<std::vector<double>> g;  // aligned with Network::params
};

/// Reverse pass. grad_out is dL/d(output); grad_latent, when given, is added
/// at the encoder/decoder boundary. Returns parameter gradients; optionally
/// also the gradient w.r.t. the input.
Grads backward(const Network& net, const ForwardTrace& trace, const Sequence& grad_out,
               const Sequence* grad_latent = nullptr, Sequence* grad_input = nullptr);

/// Mean over samples of the squared L2 reconstruction error.
double reconstruction_loss(const Network& net, const Sequence& x,
                           const Sequence* precomputed_output = nullptr);

/// Max over parameters of |analytic - numeric| / max(1e-8, |analytic| +
/// |numeric|) against central differences of the reconstruction loss.
double grad_check(const Network& net, const Sequence& x, double eps);

/// Adaptive moment estimation; state aligned with the network's parameters.
class Adam {
 public:
  Adam(const Network& net, double lr);
  void step(Network& net, const Grads& grads);

 private:
  double lr_, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  long t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

struct ClusterState {
  std::vector<std::vector<double>> centroids;  // k x latent_dim (flattened)
  std::vector<int> labels;                     // per sample
};

struct TrainConfig {
  double lr = 1e-3;
  int epochs = 200;
  int batch = 0;  // 0 = full batch
  uint64_t seed = 0;
  enum class Loss { reconstruction, combined } loss = Loss::reconstruction;
  double gamma = 0.1;         // weight of the cluster-distance term
  int refresh_interval = 10;  // epochs between k-means refreshes
  int patience = 20;          // early stop on stagnant training loss
  int k = 0;                  // cluster count for the combined loss
  int cluster_restarts = 10;
  double grad_scale = 1.0;  // external scaling of the reconstruction gradient
};

struct TrainResult {
  std::vector<double> loss_trace;
  bool early_stopped = false;
};

/// Deterministic full-batch (or fixed-order minibatch) training. Combined
/// loss pulls latents toward their assigned centroids, with the cluster state
/// refreshed by k-means every refresh_interval epochs. Throws
/// TrainingDivergence when the loss leaves the finite range.
TrainResult train(Network& net, const Sequence& x, const TrainConfig& cfg,
                  ClusterState* cluster_state = nullptr);

/// Flatten per-sample latents into a p x (len*ch) row-major matrix.
std::vector<double> flatten_latent(const Sequence& z);

void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

}  // namespace repsel::nn
