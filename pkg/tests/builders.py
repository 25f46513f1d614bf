"""Small instance builders shared by the tests."""

from convproc.program import ProgramInstance


def c(a, rel, b):
    return {"a": [str(x) for x in a], "rel": rel, "b": str(b)}


def make(omega, graphF, graphG, nx=1, ny=1, nz=1, yplus=None, zplus=None, **extra):
    data = {
        "name": "t",
        "dims": {"x": nx, "y": ny, "z": nz},
        "cones": {"yplus": yplus or [[str(int(i == j)) for j in range(ny)] for i in range(ny)],
                  "zplus": zplus or [[str(int(i == j)) for j in range(nz)] for i in range(nz)]},
        "omega": omega, "graphF": graphF, "graphG": graphG,
    }
    data.update(extra)
    return ProgramInstance.from_dict(data)
