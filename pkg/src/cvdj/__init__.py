"""Discrete- and continuous-variable Deutsch-Jozsa simulation."""

from .bitstrings import BitString, PromiseClass, asb_pair, classify, enumerate_balanced
from .dv import dj_run, prepare_uniform, walsh_hadamard
from .encoding import CVParams, encode, encoded_momentum, tophat
from .measurement import asb_window_prob, constant_window_prob, optimal_delta, window_probability
from .special import sine_integral
from .wavefunction import closed_form_asb_pdf, closed_form_constant_pdf, pdf, wavefunction

__version__ = "0.1.0"
