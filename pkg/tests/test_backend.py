import os
import subprocess
import sys

from tamecert import BACKEND, _pykernels

SNIPPET = """
import tamecert
from tamecert.certify import certify_diagonal
print(tamecert.BACKEND)
print(certify_diagonal('A2').dumps())
"""


def _run(pure: bool):
    env = dict(os.environ)
    env.pop("TAMECERT_PURE", None)
    if pure:
        env["TAMECERT_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", SNIPPET], env=env, capture_output=True, text=True, check=True)
    backend, _, report = out.stdout.partition("\n")
    return backend, report


def test_backend_name():
    assert BACKEND in ("cython", "python")


def test_pure_fallback_selected_and_identical():
    b_pure, rep_pure = _run(True)
    b_default, rep_default = _run(False)
    assert b_pure == "python"
    assert rep_pure == rep_default


def test_euler_kernel_small_case():
    # x D * (x D + 1) = x^2 D^2 + 2 x D
    p = {((1,), (1,)): 1}
    assert _pykernels.weyl_mul_euler(p, [1], 1) == {((2,), (2,)): 1, ((1,), (1,)): 2}
