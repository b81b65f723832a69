# Copyright 2026 The commlift Authors.
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

"""Python front end for the commlift solver."""

import json as _json

from ._commlift import (
    CommliftError,
    NpResult,
    TransferFunction,
    kernel_eval,
    np_solve,
    pick_min_eig,
)
from ._commlift import run_document as _run_document


def run(instance):
    """Run an instance given as a dict or JSON text; returns (exit code, report dict)."""
    text = instance if isinstance(instance, str) else _json.dumps(instance)
    code, report = _run_document(text)
    return code, _json.loads(report)


__all__ = [
    "CommliftError",
    "NpResult",
    "TransferFunction",
    "kernel_eval",
    "np_solve",
    "pick_min_eig",
    "run",
]
