from importlib.metadata import PackageNotFoundError, version

from charstack.nonorient import e_count_nonorient, m_series  # noqa
from charstack.punctured import e_count_punctured, hh_mu, mixed_poincare  # noqa

try:
    __version__ = version("charstack")
except PackageNotFoundError:
    __version__ = "unknown"
