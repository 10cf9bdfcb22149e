#include "priv/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "priv/errors.hpp"

namespace priv::nn {

namespace {

constexpr char kNetMagic[8] = {'P', 'R', 'I', 'V', 'N', 'E', 'T', '1'};
constexpr char kVaeMagic[8] = {'P', 'R', 'I', 'V', 'V', 'A', 'E', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  if (!is) throw FormatError("checkpoint truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void put_double(std::ostream& os, double d) { put_u64(os, std::bit_cast<std::uint64_t>(d)); }

double get_double(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

void put_matrix(std::ostream& os, const Matrix& m) {
  put_u64(os, m.rows);
  put_u64(os, m.cols);
  for (double v : m.data) put_double(os, v);
}

Matrix get_matrix(std::istream& is) {
  const std::uint64_t rows = get_u64(is);
  const std::uint64_t cols = get_u64(is);
  if (rows == 0 || cols == 0 || rows > (1u << 24) || cols > (1u << 24)) {
    throw FormatError("checkpoint matrix shape out of range");
  }
  Matrix m(rows, cols);
  for (double& v : m.data) v = get_double(is);
  return m;
}

void put_network(std::ostream& os, const Network& net) {
  put_u64(os, net.layer_count());
  for (std::size_t i = 0; i < net.layer_count(); ++i) {
    const LayerSpec& spec = net.layers()[i];
    put_u64(os, spec.in_dim);
    put_u64(os, spec.out_dim);
    put_u64(os, static_cast<std::uint64_t>(spec.act));
  }
  for (std::size_t i = 0; i < net.layer_count(); ++i) {
    put_matrix(os, net.weight(i));
    put_matrix(os, net.bias(i));
  }
}

Network get_network(std::istream& is) {
  const std::uint64_t n = get_u64(is);
  if (n == 0 || n > 64) throw FormatError("checkpoint layer count out of range");
  std::vector<LayerSpec> specs(n);
  for (LayerSpec& spec : specs) {
    spec.in_dim = get_u64(is);
    spec.out_dim = get_u64(is);
    const std::uint64_t act = get_u64(is);
    if (act > static_cast<std::uint64_t>(Activation::sigmoid)) {
      throw FormatError("checkpoint has unknown activation code");
    }
    spec.act = static_cast<Activation>(act);
  }
  Network net(specs, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix w = get_matrix(is);
    Matrix b = get_matrix(is);
    if (!w.same_shape(net.weight(i)) || !b.same_shape(net.bias(i))) {
      throw FormatError("checkpoint parameter shape mismatch");
    }
    net.weight(i) = std::move(w);
    net.bias(i) = std::move(b);
  }
  return net;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot open checkpoint for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open checkpoint for reading: " + path);
  return is;
}

void check_magic(std::istream& is, const char (&magic)[8], const char* what) {
  char buf[8];
  is.read(buf, 8);
  if (!is || std::memcmp(buf, magic, 8) != 0) {
    throw FormatError(std::string("not a ") + what + " checkpoint");
  }
}

}  // namespace

void save_network(const Network& net, const std::string& path) {
  std::ofstream os = open_out(path);
  os.write(kNetMagic, 8);
  put_network(os, net);
  if (!os) throw FormatError("checkpoint write failed: " + path);
}

Network load_network(const std::string& path) {
  std::ifstream is = open_in(path);
  check_magic(is, kNetMagic, "network");
  return get_network(is);
}

void save_vae(const VaeModel& model, const std::string& path) {
  model.validate();
  std::ofstream os = open_out(path);
  os.write(kVaeMagic, 8);
  put_u64(os, model.latent_dim);
  put_network(os, model.encoder);
  put_network(os, model.decoder);
  if (!os) throw FormatError("checkpoint write failed: " + path);
}

VaeModel load_vae(const std::string& path) {
  std::ifstream is = open_in(path);
  check_magic(is, kVaeMagic, "vae");
  VaeModel m;
  m.latent_dim = get_u64(is);
  m.encoder = get_network(is);
  m.decoder = get_network(is);
  m.validate();
  return m;
}

}  // namespace priv::nn
