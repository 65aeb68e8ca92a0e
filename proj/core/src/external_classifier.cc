// Copyright 2026 The herodet Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <system_error>

#include "herodet/classifier.h"
#include "herodet/png_io.h"
#include "json.hpp"

namespace herodet {
namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw std::system_error(errno, std::generic_category(), what);
}

void ignore_sigpipe_once() {
  // A dead child must surface as EPIPE rather than kill the host process.
  static const bool done = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

}  // namespace

ExternalBridge::ExternalBridge(std::string command)
    : command_(std::move(command)) {
  ignore_sigpipe_once();
  std::string tmpl =
      (std::filesystem::temp_directory_path() / "herodet-bridge-XXXXXX")
          .string();
  if (::mkdtemp(tmpl.data()) == nullptr) throw_errno("mkdtemp");
  scratch_dir_ = tmpl;

  int in_pipe[2], out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw_errno("pipe");
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw_errno("pipe");
  }
  pid_ = ::fork();
  if (pid_ < 0) throw_errno("fork");
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

ExternalBridge::~ExternalBridge() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }
  std::error_code ec;
  std::filesystem::remove_all(scratch_dir_, ec);
}

std::string ExternalBridge::request(const std::string& line) {
  const std::string msg = line + "\n";
  size_t sent = 0;
  while (sent < msg.size()) {
    const ssize_t n = ::write(to_child_, msg.data() + sent, msg.size() - sent);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("external classifier `" + command_ +
                               "` is not accepting requests: " +
                               std::strerror(errno));
    }
    sent += static_cast<size_t>(n);
  }
  for (;;) {
    const size_t eol = pending_.find('\n');
    if (eol != std::string::npos) {
      std::string reply = pending_.substr(0, eol);
      pending_.erase(0, eol + 1);
      return reply;
    }
    char buf[4096];
    const ssize_t n = ::read(from_child_, buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw std::runtime_error("external classifier `" + command_ +
                               "` closed its output");
    }
    pending_.append(buf, static_cast<size_t>(n));
  }
}

Prediction ExternalBridge::classify(const Image& crop, RoiType roi) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto path =
      scratch_dir_ / ("crop-" + std::to_string(counter_++) + ".png");
  write_png(path, crop);
  const nlohmann::json req = {{"image_path", path.string()},
                              {"roi_type", std::string(roi_name(roi))}};
  const std::string reply = request(req.dump());
  std::error_code ec;
  std::filesystem::remove(path, ec);

  std::vector<LabelScore> scores;
  try {
    const auto resp = nlohmann::json::parse(reply);
    const auto labels = resp.at("labels").get<std::vector<std::string>>();
    const auto conf = resp.at("confidences").get<std::vector<double>>();
    if (labels.size() != conf.size()) {
      throw std::runtime_error("labels and confidences differ in length");
    }
    for (size_t i = 0; i < labels.size(); ++i) {
      scores.push_back({labels[i], conf[i]});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed external classifier response: " +
                             std::string(e.what()));
  }
  try {
    return make_prediction(std::move(scores));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

}  // namespace herodet
