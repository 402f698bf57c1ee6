// SPDX-License-Identifier: Apache-2.0

#include "biharm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace biharm
{

namespace
{

int default_workers()
{
  if (const char *env = std::getenv("BIHARM_THREADS"))
  {
    try
    {
      const int n = std::stoi(env);
      if (n >= 1)
      {
        return n;
      }
    }
    catch (const std::exception &)
    {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<int> &workers()
{
  static std::atomic<int> n{default_workers()};
  return n;
}

}  // namespace

int worker_count()
{
  return workers().load();
}

void set_worker_count(int n)
{
  workers().store(std::max(1, n));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)> &body)
{
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (nw <= 1)
  {
    if (n > 0)
    {
      body(0, n);
    }
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(nw - 1);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](std::size_t b, std::size_t e) {
    try
    {
      body(b, e);
    }
    catch (...)
    {
      std::lock_guard lock(error_mutex);
      if (!error)
      {
        error = std::current_exception();
      }
    }
  };
  const std::size_t chunk = n / nw, extra = n % nw;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < nw; ++w)
  {
    const std::size_t end = begin + chunk + (w < extra ? 1 : 0);
    if (w + 1 == nw)
    {
      run(begin, end);
    }
    else
    {
      threads.emplace_back(run, begin, end);
    }
    begin = end;
  }
  for (auto &t : threads)
  {
    t.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace biharm
