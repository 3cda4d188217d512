#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace alphasun {

// Runs fn(i) for i in [0, count) on up to n_threads workers. Results land
// wherever fn writes them (callers preallocate), so output order is the
// index order no matter which worker finishes first. The first exception
// is rethrown on the calling thread after everyone joins.
void parallel_for(int count, int n_threads, const std::function<void(int)>& fn);

// Hardware thread count with a sane floor of 1.
int default_threads();

}  // namespace alphasun
