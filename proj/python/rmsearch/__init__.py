# Copyright 2026 The rmsearch Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the rmsearch C++ core."""

import json as _json

from rmsearch._rmsearch import *  # noqa: F401,F403
from rmsearch._rmsearch import __version__  # noqa: F401
from rmsearch._rmsearch import seed_average_experiment as _seed_average


def seed_average_experiment(rows, cols, rm, seeds, games, seed=0):
  """Seed-averaging report as a dict."""
  return _json.loads(_seed_average(rows, cols, rm, seeds, games, seed))
