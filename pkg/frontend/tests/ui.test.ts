// @vitest-environment happy-dom
//
// The full browser flow: mount the app, start a game against the live
// service, click chips onto pans, follow hints, and accuse — asserting the
// DOM mirrors every server response.

import { beforeEach, describe, expect, it } from "vitest";

import { initApp, type App } from "../src/ui.js";
import { BASE_URL } from "./server.js";

function chipIds(root: HTMLElement, selector: string): number[] {
  return Array.from(root.querySelectorAll(selector)).map((node) =>
    Number.parseInt((node as HTMLElement).dataset.coin ?? "-1", 10),
  );
}

describe("board UI", () => {
  let root: HTMLElement;
  let app: App;

  beforeEach(() => {
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById("app") as HTMLElement;
    app = initApp(document, root, BASE_URL);
  });

  it("renders chips, scales, badge and history through a full hint-led win", async () => {
    await app.newGame(11, 2, "just-find", "exact");
    expect(root.querySelectorAll(".tray .chip")).toHaveLength(11);
    expect(root.querySelectorAll(".scale")).toHaveLength(2);
    expect(root.querySelector(".optimal-badge")?.textContent).toBe("optimal: 2");
    expect(root.querySelector(".minute-counter")?.textContent).toBe("minute 0/2");
    // all chips start in the unknown color
    expect(root.querySelectorAll(".chip-unknown")).toHaveLength(11);

    await app.hint();
    const staged = chipIds(root, ".pan .chip");
    expect(staged.length).toBeGreaterThan(0);

    await app.submitStaged();
    expect(root.querySelector(".minute-counter")?.textContent).toBe("minute 1/2");
    expect(root.querySelectorAll(".history li")).toHaveLength(1);
    // classification colors now reflect the server view
    expect(root.querySelectorAll(".chip-real").length).toBeGreaterThan(0);

    await app.hint();
    await app.submitStaged();
    expect(root.querySelector(".minute-counter")?.textContent).toBe("minute 2/2");

    // the final hint proposes an accusation and fills the dialog
    await app.hint();
    const button = root.querySelector("#accuse-button") as HTMLButtonElement;
    expect(button.disabled).toBe(false);
    await app.accuse();
    expect(root.querySelector(".state")?.textContent).toBe("won");
    expect(root.querySelector(".status-line")?.textContent).toContain("you win");
  });

  it("places chips by clicking and blocks unbalanced pans client-side", async () => {
    await app.newGame(11, 2, "just-find", "exact");

    const clickChip = (coin: number) => {
      const chip = root.querySelector(`.tray .chip[data-coin="${coin}"]`) as HTMLElement;
      chip.click();
    };
    const clickPan = (scale: number, side: string) => {
      const pan = root.querySelector(
        `.pan[data-scale="${scale}"][data-side="${side}"]`,
      ) as HTMLElement;
      pan.click();
    };

    clickChip(0);
    clickPan(0, "left");
    clickChip(1);
    clickPan(0, "left");
    clickChip(2);
    clickPan(0, "right");

    const submit = root.querySelector("#submit-weighing") as HTMLButtonElement;
    expect(submit.disabled).toBe(true);
    expect(submit.title).toContain("pan-size-mismatch");

    // balancing the pans arms the button
    clickChip(3);
    clickPan(0, "right");
    const rearmed = root.querySelector("#submit-weighing") as HTMLButtonElement;
    expect(rearmed.disabled).toBe(false);
  });

  it("shows the disclosed counter-hypothesis on a wrong accusation", async () => {
    await app.newGame(11, 2, "just-find", "exact");
    app.setAccusation(4, null);
    await app.accuse();
    expect(root.querySelector(".state")?.textContent).toBe("lost");
    expect(root.querySelector(".status-line")?.textContent).toMatch(
      /coin \d+ could still be (light|heavy)/,
    );
  });

  it("requires a label before accusing in find-and-label mode", async () => {
    await app.newGame(10, 2, "find-and-label", "exact");
    app.setAccusation(3, null);
    let button = root.querySelector("#accuse-button") as HTMLButtonElement;
    expect(button.disabled).toBe(true);
    app.setAccusation(3, "light");
    button = root.querySelector("#accuse-button") as HTMLButtonElement;
    expect(button.disabled).toBe(false);
  });
});
