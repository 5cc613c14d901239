import { ApiClient } from './api.js';
import { mountApp } from './app.js';

const params = new URLSearchParams(window.location.search);
const base = params.get('api') ?? window.location.origin;

const app = mountApp(document, new ApiClient(base));
void app.start();
