#pragma once

// Experiment lifecycle service. Records live in an ExperimentStore and every
// view is rebuilt from it; the only in-memory state is the set of jobs.
// Mutations of one experiment are serialized and at most one job runs per
// experiment at a time.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hctps/experiment.hpp"
#include "hctps/json_io.hpp"
#include "hctps/store.hpp"
#include "hctps/subcube.hpp"

namespace hctps {

struct JobStatus {
  std::string job_id;
  std::string experiment_id;
  std::size_t completed = 0;
  std::size_t total = 0;
  bool done = false;
  std::optional<std::size_t> phase_index;
  std::optional<std::string> error;
};

inline void to_json(json& j, const JobStatus& s) {
  j = {{"job_id", s.job_id},       {"experiment_id", s.experiment_id}, {"completed", s.completed},
       {"total", s.total},         {"done", s.done},
       {"phase_index", s.phase_index ? json(*s.phase_index) : json(nullptr)},
       {"error", s.error ? json(*s.error) : json(nullptr)}};
}

class Service {
 public:
  explicit Service(std::filesystem::path store_dir, unsigned worker_threads = 0)
      : store_(std::move(store_dir)), worker_threads_(worker_threads) {}

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ~Service() { wait_all(); }

  [[nodiscard]] const ExperimentStore& store() const noexcept { return store_; }

  std::string create_experiment(FunctionId fid, std::size_t dim, const GAConfig& config,
                                std::uint64_t evals_per_dim = kEvaluationsPerDim) {
    std::lock_guard lock(mutex_);
    std::string id;
    do {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "exp-%06llu", static_cast<unsigned long long>(++id_counter_));
      id = buf;
    } while (store_.exists(id));
    store_.save(new_experiment(id, fid, dim, config, evals_per_dim));
    return id;
  }

  std::string start_global(const std::string& experiment_id, std::size_t n_runs) {
    if (n_runs < 1) throw Error(ErrorKind::InvalidConfig, "n_runs must be >= 1");
    std::lock_guard lock(mutex_);
    ExperimentRecord record = store_.load_record(experiment_id);
    require_idle(experiment_id);
    require_can_start_global(record);
    record.status = ExperimentStatus::Running;
    store_.save(record);
    return launch(record, n_runs, std::nullopt);
  }

  std::string start_local(const std::string& experiment_id, const LocalTarget& target, std::size_t n_runs) {
    if (n_runs < 1) throw Error(ErrorKind::InvalidConfig, "n_runs must be >= 1");
    std::lock_guard lock(mutex_);
    ExperimentRecord record = store_.load_record(experiment_id);
    require_idle(experiment_id);
    require_can_start_local(record);
    static_cast<void>(plan_local(record.dim, target));
    record.status = ExperimentStatus::Running;
    store_.save(record);
    return launch(record, n_runs, target);
  }

  [[nodiscard]] ExperimentRecord experiment(const std::string& experiment_id) const {
    std::lock_guard lock(mutex_);
    return store_.load_record(experiment_id);
  }

  /// Full record view plus the in-flight job, if any.
  [[nodiscard]] json experiment_view(const std::string& experiment_id) const {
    std::lock_guard lock(mutex_);
    json view = store_.load_record(experiment_id);
    view["active_job"] = nullptr;
    if (auto it = in_flight_.find(experiment_id); it != in_flight_.end()) {
      view["active_job"] = status_locked(it->second);
    }
    return view;
  }

  [[nodiscard]] json octants(const std::string& experiment_id) const {
    const ExperimentRecord record = experiment(experiment_id);
    if (record.phases.empty()) throw Error(ErrorKind::GlobalPending, "global phase has not completed");
    const auto boxes = octant_sequence(search_cube(3));
    json out = json::array();
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const int index = static_cast<int>(i + 1);
      json phases = json::array();
      std::optional<std::size_t> best_phase;
      for (std::size_t p = 0; p < record.phases.size(); ++p) {
        const auto& phase = record.phases[p];
        if (!phase.subcube_spec || phase.subcube_spec->octant_index != index) continue;
        phases.push_back({{"phase_index", p},
                          {"scale_exponent", phase.subcube_spec->scale_exponent},
                          {"stats", phase.stats}});
        if (!best_phase || phase.stats.best < record.phases[*best_phase].stats.best) best_phase = p;
      }
      out.push_back({{"octant_index", index},
                     {"box", box_to_json(boxes[i])},
                     {"local_phases", std::move(phases)},
                     {"stats", best_phase ? json(record.phases[*best_phase].stats) : json(nullptr)}});
    }
    return out;
  }

  /// Region a local phase with `target` would search, without running it.
  [[nodiscard]] Box preview(const std::string& experiment_id, const LocalTarget& target) const {
    return plan_local(experiment(experiment_id).dim, target).region;
  }

  FinalReport mark_satisfied(const std::string& experiment_id) {
    std::lock_guard lock(mutex_);
    ExperimentRecord record = store_.load_record(experiment_id);
    require_idle(experiment_id);
    FinalReport report = hctps::mark_satisfied(record);
    store_.save(record);
    return report;
  }

  [[nodiscard]] JobStatus job(const std::string& job_id) const {
    std::lock_guard lock(mutex_);
    auto it = jobs_.find(job_id);
    if (it == jobs_.end()) throw Error(ErrorKind::UnknownJob, job_id);
    return status_locked(job_id);
  }

  /// Blocks until the job finishes and returns its final status.
  JobStatus wait(const std::string& job_id) {
    std::shared_ptr<Job> job;
    {
      std::lock_guard lock(mutex_);
      auto it = jobs_.find(job_id);
      if (it == jobs_.end()) throw Error(ErrorKind::UnknownJob, job_id);
      job = it->second;
    }
    job->done.wait(false);
    return this->job(job_id);
  }

  void wait_all() {
    std::vector<std::shared_ptr<Job>> all;
    {
      std::lock_guard lock(mutex_);
      for (auto& [id, job] : jobs_) all.push_back(job);
    }
    for (auto& job : all) {
      if (job->thread.joinable()) job->thread.join();
    }
  }

 private:
  struct Job {
    std::string id;
    std::string experiment_id;
    std::size_t total = 0;
    std::atomic<std::size_t> completed{0};
    std::atomic<bool> done{false};
    std::optional<std::size_t> phase_index;
    std::optional<std::string> error;
    std::thread thread;
  };

  void require_idle(const std::string& experiment_id) const {
    if (in_flight_.contains(experiment_id)) {
      throw Error(ErrorKind::JobInFlight, "one job per experiment; " + in_flight_.at(experiment_id) + " is running");
    }
  }

  JobStatus status_locked(const std::string& job_id) const {
    const auto& job = *jobs_.at(job_id);
    return JobStatus{job.id,   job.experiment_id, job.completed.load(), job.total, job.done.load(),
                     job.phase_index, job.error};
  }

  std::string launch(const ExperimentRecord& record, std::size_t n_runs, std::optional<LocalTarget> target) {
    auto job = std::make_shared<Job>();
    job->id = "job-" + std::to_string(++job_counter_);
    job->experiment_id = record.experiment_id;
    job->total = n_runs;
    jobs_[job->id] = job;
    in_flight_[record.experiment_id] = job->id;

    job->thread = std::thread([this, job, record, n_runs, target] {
      PhaseOptions options;
      options.threads = worker_threads_;
      options.on_progress = [job](std::size_t done) {
        std::size_t seen = job->completed.load();
        while (seen < done && !job->completed.compare_exchange_weak(seen, done)) {
        }
      };
      std::optional<PhaseResult> phase;
      std::optional<std::string> error;
      try {
        phase = target ? execute_local(record, *target, n_runs, options) : execute_global(record, n_runs, options);
      } catch (const std::exception& e) {
        error = e.what();
      }
      std::lock_guard lock(mutex_);
      try {
        ExperimentRecord current = store_.load_record(record.experiment_id);
        if (phase) {
          append_phase(current, std::move(*phase));
          job->phase_index = current.phases.size() - 1;
        } else if (!current.phases.empty()) {
          current.status = ExperimentStatus::AwaitingDecision;
        }
        store_.save(current);
      } catch (const std::exception& e) {
        if (!error) error = e.what();
      }
      job->error = error;
      in_flight_.erase(job->experiment_id);
      job->done = true;
      job->done.notify_all();
    });
    return job->id;
  }

  ExperimentStore store_;
  unsigned worker_threads_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::map<std::string, std::string> in_flight_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t job_counter_ = 0;
};

}  // namespace hctps
