from flask import Flask, request, jsonify, Response
import functools
import random

import config
from cli import braid_report, closure_report
from lib import line_config, line_io, mw_links, tangent_surface, theorem44
from lib.braid_core import parse_braid
from lib.errors import MWLinksError, RangeViolation
from lib.torus_links import TorusParams, torus_report

app = Flask(__name__)


def _error(e, status=400):
    return jsonify({"success": False, **e.to_dict()}), status


def _as_int(value, name):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise RangeViolation(f"{name} must be an integer", **{name: value})


def _int_field(data, name, default=None):
    return _as_int(data.get(name, default), name)


def _braid_from(data):
    text = data.get("braid")
    if not text:
        return None
    return parse_braid(text)


@app.errorhandler(MWLinksError)
def domain_error(e):
    return _error(e)


@app.route("/")
def index():
    return jsonify({
        "success": True,
        "endpoints": sorted(str(rule) for rule in app.url_map.iter_rules() if str(rule).startswith("/api/")),
    })


@app.route("/api/braid", methods=["POST"])
def braid():
    data = request.get_json() or {}
    w = _braid_from(data)
    if w is None:
        return jsonify({"success": False, "error": "braid is required"}), 400
    return jsonify({"success": True, **braid_report(w)})


@app.route("/api/closure", methods=["POST"])
def closure():
    data = request.get_json() or {}
    w = _braid_from(data)
    if w is None:
        return jsonify({"success": False, "error": "braid is required"}), 400
    return jsonify({"success": True, **closure_report(w)})


@app.route("/api/torus", methods=["POST"])
def torus():
    data = request.get_json() or {}
    if "p" not in data or "q" not in data:
        return jsonify({"success": False, "error": "p and q are required"}), 400
    t = TorusParams(_int_field(data, "p"), _int_field(data, "q"))
    return jsonify({"success": True, **torus_report(t)})


@app.route("/api/mw", methods=["POST"])
def mw():
    data = request.get_json() or {}
    parts = data.get("parts")
    if not parts:
        return jsonify({"success": False, "error": "parts is required"}), 400
    if isinstance(parts, str):
        wp = mw_links.parse_parts(parts)
    elif isinstance(parts, list):
        wp = mw_links.WParams(tuple(_as_int(a, "part") for a in parts))
    else:
        raise RangeViolation("parts must be a list of integers", parts=parts)
    report = mw_links.verify_w_model(wp).to_dict()
    if wp.g >= 1:
        report["positive_linking"] = mw_links.corollary16_check(wp)
    return jsonify({"success": True, **report})


@app.route("/api/check-a", methods=["POST"])
def check_a():
    data = request.get_json() or {}
    w = _braid_from(data)
    if w is None or "degree" not in data:
        return jsonify({"success": False, "error": "braid and degree are required"}), 400
    return jsonify({"success": True, **theorem44.check_a(w, _int_field(data, "degree")).to_dict()})


@app.route("/api/check-b", methods=["POST"])
def check_b():
    data = request.get_json() or {}
    w = _braid_from(data)
    if w is None or "degree" not in data:
        return jsonify({"success": False, "error": "braid and degree are required"}), 400
    return jsonify({"success": True, **theorem44.check_b(w, _int_field(data, "degree")).to_dict()})


@app.route("/api/lines", methods=["POST"])
def lines():
    data = request.get_json() or {}
    if data.get("lines"):
        configuration = line_io.parse_lines(data["lines"])
    elif data.get("random"):
        configuration = line_config.random_hopf_configuration(
            _int_field(data, "random"), random.Random(_int_field(data, "seed", config.RANDOM_SEED)))
    else:
        return jsonify({"success": False, "error": "lines or random is required"}), 400
    script = line_config.standardize(configuration)
    certificate = line_config.verify_script(script)
    return jsonify({
        "success": True,
        "stages": len(script.stages),
        "final": [line_io.format_line(line) for line in script.final_lines()],
        "final_equations_hold": line_config.final_equations_hold(script),
        "script": script.to_dict(),
        "certificate": certificate.to_dict(),
    })


@functools.lru_cache(maxsize=config.TANGENT_CACHE_SIZE)
def _tangent_payload(degree, pencil, phi, samples, fmt):
    curve = tangent_surface.section(degree, pencil, phi, samples)
    return tangent_surface.emit([curve] if fmt == "svg" else curve, fmt)


@app.route("/api/tangent")
def tangent():
    degree = request.args.get("degree", type=int)
    if degree is None:
        return jsonify({"success": False, "error": "degree is required"}), 400
    pencil = request.args.get("pencil", "lprime")
    phi = request.args.get("phi", 0.0, type=float)
    samples = request.args.get("samples", config.DEFAULT_SAMPLES, type=int)
    fmt = request.args.get("format", "svg")
    if fmt not in ("csv", "svg"):
        return jsonify({"success": False, "error": f"unknown format {fmt}"}), 400

    mimetype = "image/svg+xml" if fmt == "svg" else "text/csv"
    return Response(_tangent_payload(degree, pencil, phi, samples, fmt), mimetype=mimetype)


if __name__ == "__main__":
    app.run(host=config.HTTP_HOST, port=config.HTTP_PORT, debug=True)
